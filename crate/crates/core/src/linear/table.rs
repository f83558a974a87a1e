use crate::error::{Error, Result};
use crate::words::{count_up_to, shortlex_index, words_up_to, Alphabet};

/// Anything that can be evaluated on strings: tables, automata.
pub trait StringFunction {
    fn alphabet(&self) -> &Alphabet;
    fn eval(&self, u: &[usize]) -> Result<f64>;
    /// Longest evaluable string, `None` when unbounded.
    fn max_len(&self) -> Option<usize>;
}

/// Function on X^{≤depth}, stored in shortlex order.
#[derive(Debug, Clone, PartialEq)]
pub struct StringFunctionTable {
    alphabet: Alphabet,
    depth: usize,
    values: Vec<f64>,
}

impl StringFunctionTable {
    pub fn new(alphabet: Alphabet, depth: usize, values: Vec<f64>) -> Result<Self> {
        let need = count_up_to(alphabet.len(), depth);
        if values.len() != need {
            return Err(Error::Dimension(format!("{} values for {} strings", values.len(), need)));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite table value".into()));
        }
        Ok(StringFunctionTable { alphabet, depth, values })
    }

    pub fn from_fn(alphabet: Alphabet, depth: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let values = words_up_to(alphabet.len(), depth).iter().map(|u| f(u)).collect();
        StringFunctionTable { alphabet, depth, values }
    }

    /// Tabulates any evaluable function.
    pub fn tabulate(f: &dyn StringFunction, depth: usize) -> Result<Self> {
        let words = words_up_to(f.alphabet().len(), depth);
        let values = words.iter().map(|u| f.eval(u)).collect::<Result<Vec<_>>>()?;
        StringFunctionTable::new(f.alphabet().clone(), depth, values)
    }

    pub fn zero(alphabet: Alphabet, depth: usize) -> Self {
        StringFunctionTable::from_fn(alphabet, depth, |_| 0.0)
    }

    /// χ_ε
    pub fn unit(alphabet: Alphabet, depth: usize) -> Self {
        StringFunctionTable::from_fn(alphabet, depth, |u| if u.is_empty() { 1.0 } else { 0.0 })
    }

    /// χ_x
    pub fn letter(alphabet: Alphabet, depth: usize, x: usize) -> Self {
        StringFunctionTable::from_fn(alphabet, depth, |u| if u == [x] { 1.0 } else { 0.0 })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, u: &[usize]) -> Result<f64> {
        if u.len() > self.depth {
            return Err(Error::Depth {
                have: self.depth,
                need: u.len(),
            });
        }
        if u.iter().any(|&x| x >= self.alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("{:?}", u)));
        }
        Ok(self.values[shortlex_index(self.alphabet.len(), u)])
    }

    fn at(&self, u: &[usize]) -> f64 {
        self.values[shortlex_index(self.alphabet.len(), u)]
    }

    pub fn truncate(&self, depth: usize) -> StringFunctionTable {
        let depth = depth.min(self.depth);
        let n = count_up_to(self.alphabet.len(), depth);
        StringFunctionTable {
            alphabet: self.alphabet.clone(),
            depth,
            values: self.values[..n].to_vec(),
        }
    }

    pub fn max_abs_diff(&self, other: &StringFunctionTable) -> f64 {
        let d = self.depth.min(other.depth);
        let n = count_up_to(self.alphabet.len(), d);
        self.values[..n]
            .iter()
            .zip(&other.values[..n])
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn pointwise(&self, other: &StringFunctionTable, op: impl Fn(f64, f64) -> f64) -> Result<StringFunctionTable> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let d = self.depth.min(other.depth);
        let n = count_up_to(self.alphabet.len(), d);
        let values = (0..n).map(|i| op(self.values[i], other.values[i])).collect();
        Ok(StringFunctionTable {
            alphabet: self.alphabet.clone(),
            depth: d,
            values,
        })
    }

    pub fn add(&self, other: &StringFunctionTable) -> Result<StringFunctionTable> {
        self.pointwise(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StringFunctionTable) -> Result<StringFunctionTable> {
        self.pointwise(other, |a, b| a - b)
    }

    /// Pointwise product f·g.
    pub fn mul(&self, other: &StringFunctionTable) -> Result<StringFunctionTable> {
        self.pointwise(other, |a, b| a * b)
    }

    pub fn scale(&self, a: f64) -> StringFunctionTable {
        StringFunctionTable {
            alphabet: self.alphabet.clone(),
            depth: self.depth,
            values: self.values.iter().map(|v| a * v).collect(),
        }
    }

    /// (f∘g)(u) = Σ_{vw=u} f(v)g(w)
    pub fn conv(&self, other: &StringFunctionTable) -> Result<StringFunctionTable> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let d = self.depth.min(other.depth);
        Ok(StringFunctionTable::from_fn(self.alphabet.clone(), d, |u| {
            (0..=u.len()).map(|k| self.at(&u[..k]) * other.at(&u[k..])).sum()
        }))
    }

    /// f(ũ)
    pub fn reverse(&self) -> StringFunctionTable {
        StringFunctionTable::from_fn(self.alphabet.clone(), self.depth, |u| {
            let r: Vec<usize> = u.iter().rev().copied().collect();
            self.at(&r)
        })
    }

    /// The g with f∘g = χ_ε, by the triangular recursion
    /// g(u) = −f(ε)⁻¹ Σ_{vw=u, v≠ε} f(v)g(w).
    pub fn inverse(&self, tol_zero: f64) -> Result<StringFunctionTable> {
        let f0 = self.values[0];
        if f0.abs() <= tol_zero {
            return Err(Error::Singular);
        }
        let m = self.alphabet.len();
        let words = words_up_to(m, self.depth);
        let mut g = vec![0.0; words.len()];
        g[0] = 1.0 / f0;
        for (i, u) in words.iter().enumerate().skip(1) {
            let s: f64 = (1..=u.len()).map(|k| self.at(&u[..k]) * g[shortlex_index(m, &u[k..])]).sum();
            g[i] = -s / f0;
        }
        Ok(StringFunctionTable {
            alphabet: self.alphabet.clone(),
            depth: self.depth,
            values: g,
        })
    }

    /// f⁺ = (χ_ε − f)⁻¹ − χ_ε
    pub fn iteration(&self, tol_zero: f64) -> Result<StringFunctionTable> {
        let unit = StringFunctionTable::unit(self.alphabet.clone(), self.depth);
        unit.sub(self)?.inverse(tol_zero)?.sub(&unit)
    }

    /// f^{∘k}, k ≥ 1
    pub fn conv_power(&self, k: usize) -> Result<StringFunctionTable> {
        if k == 0 {
            return Ok(StringFunctionTable::unit(self.alphabet.clone(), self.depth));
        }
        let mut r = self.clone();
        for _ in 1..k {
            r = r.conv(self)?;
        }
        Ok(r)
    }
}

impl StringFunction for StringFunctionTable {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn eval(&self, u: &[usize]) -> Result<f64> {
        self.get(u)
    }

    fn max_len(&self) -> Option<usize> {
        Some(self.depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn geometric_inverse() {
        let x = Alphabet::new(["x"]).unwrap();
        let f = StringFunctionTable::unit(x.clone(), 6)
            .sub(&StringFunctionTable::letter(x, 6, 0))
            .unwrap();
        let g = f.inverse(1e-12).unwrap();
        assert!(g.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn inverse_is_two_sided() {
        let f = StringFunctionTable::from_fn(ab(), 4, |u| 2.0 + u.len() as f64 * 0.3 - u.iter().sum::<usize>() as f64);
        let g = f.inverse(1e-12).unwrap();
        let unit = StringFunctionTable::unit(ab(), 4);
        assert!(f.conv(&g).unwrap().max_abs_diff(&unit) < 1e-12);
        assert!(g.conv(&f).unwrap().max_abs_diff(&unit) < 1e-12);
        assert!(StringFunctionTable::zero(ab(), 2).inverse(1e-12).is_err());
    }

    #[test]
    fn iteration_of_letter() {
        let it = StringFunctionTable::letter(ab(), 4, 0).iteration(1e-12).unwrap();
        for u in words_up_to(2, 4) {
            let expect = if !u.is_empty() && u.iter().all(|&x| x == 0) { 1.0 } else { 0.0 };
            assert_eq!(it.get(&u).unwrap(), expect);
        }
    }

    #[test]
    fn reverse_and_depth() {
        let f = StringFunctionTable::from_fn(ab(), 3, |u| u.first().map_or(0.0, |&x| x as f64 + 1.0));
        assert_eq!(f.reverse().get(&[0, 1]).unwrap(), 2.0);
        assert!(matches!(f.get(&[0, 0, 0, 0]), Err(Error::Depth { .. })));
        assert_eq!(f.add(&f.truncate(2)).unwrap().depth(), 2);
    }
}
