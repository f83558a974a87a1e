//! Random sequences, paired sequences and Markov chains, and their
//! transformation by probabilistic transducers.

use crate::closure::{residual_closure, WordTable};
use crate::error::{Error, Result};
use crate::general_pa::GeneralPA;
use crate::linalg::{Distribution, Matrix, StochasticMatrix, Tolerances};
use crate::words::{words_of_len, Alphabet, Word};

/// ζ over X^{≤depth}: ζ(ε)=1, ζ(u)=Σ_x ζ(ux).
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSequence {
    alphabet: Alphabet,
    table: WordTable,
}

impl RandomSequence {
    /// `values` in shortlex order.
    pub fn new(alphabet: Alphabet, depth: usize, values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let table = WordTable::new(alphabet.len(), depth, values)?;
        let rs = RandomSequence { alphabet, table };
        rs.validate(tol)?;
        Ok(rs)
    }

    pub fn from_fn(alphabet: Alphabet, depth: usize, f: impl FnMut(&[usize]) -> f64, tol: &Tolerances) -> Result<Self> {
        let table = WordTable::from_fn(alphabet.len(), depth, f);
        RandomSequence::new(alphabet, depth, table.values, tol)
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if (self.table.values[0] - 1.0).abs() > tol.sum {
            return Err(Error::Invalid(format!("ζ(ε) = {}", self.table.values[0])));
        }
        if self.table.values.iter().any(|&v| v < -tol.nonneg) {
            return Err(Error::Invalid("negative probability".into()));
        }
        if !self.table.is_additive(tol.sum) {
            return Err(Error::Invalid("ζ(u) ≠ Σ_x ζ(ux)".into()));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.table.depth
    }

    pub fn values(&self) -> &[f64] {
        &self.table.values
    }

    pub fn value(&self, u: &[usize]) -> Result<f64> {
        self.table.get(u).ok_or(Error::Depth {
            have: self.depth(),
            need: u.len(),
        })
    }

    /// ζ_u(u′) = ζ(uu′)/ζ(u)
    pub fn residual(&self, u: &[usize], tol: &Tolerances) -> Result<RandomSequence> {
        Ok(RandomSequence {
            alphabet: self.alphabet.clone(),
            table: self.table.residual(u, tol.zero)?,
        })
    }

    pub fn agrees(&self, other: &RandomSequence, tol: f64) -> bool {
        self.alphabet == other.alphabet && self.table.agrees(&other.table, self.depth().min(other.depth()), tol)
    }

    /// A_ζ over ({e}, X) when the residuals close within the table depth.
    pub fn automaton(&self, tol: &Tolerances) -> Option<GeneralPA> {
        let cl = residual_closure(&self.table, tol.zero, tol.sum)?;
        let n = cl.states.len();
        let mut trans = vec![Matrix::zeros(n, n); self.alphabet.len()];
        for &(g, x, h, p) in &cl.edges {
            trans[x][(g, h)] += p;
        }
        let mut initial = vec![0.0; n];
        initial[0] = 1.0;
        GeneralPA::new(Alphabet::new(["e"]).ok()?, self.alphabet.clone(), trans, initial, tol).ok()
    }
}

/// η(u,v) over pairs with |u| = |v| ≤ depth, stored over the pair alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSequence {
    inputs: Alphabet,
    outputs: Alphabet,
    table: WordTable,
}

impl PairedSequence {
    pub fn depth(&self) -> usize {
        self.table.depth
    }

    pub fn value(&self, u: &[usize], v: &[usize]) -> Result<f64> {
        if u.len() != v.len() {
            return Ok(0.0);
        }
        let ny = self.outputs.len();
        let w: Word = u.iter().zip(v).map(|(&x, &y)| x * ny + y).collect();
        self.table.get(&w).ok_or(Error::Depth {
            have: self.depth(),
            need: w.len(),
        })
    }

    pub fn is_valid(&self, tol: &Tolerances) -> bool {
        (self.table.values[0] - 1.0).abs() <= tol.sum
            && self.table.values.iter().all(|&v| v >= -tol.nonneg)
            && self.table.is_additive(tol.sum)
    }

    /// (η^X, η^Y)
    pub fn marginals(&self, tol: &Tolerances) -> Result<(RandomSequence, RandomSequence)> {
        let (nx, ny) = (self.inputs.len(), self.outputs.len());
        let d = self.depth();
        let mx = RandomSequence::from_fn(
            self.inputs.clone(),
            d,
            |u| words_of_len(ny, u.len()).iter().map(|v| self.value(u, v).unwrap()).sum(),
            tol,
        )?;
        let my = RandomSequence::from_fn(
            self.outputs.clone(),
            d,
            |v| words_of_len(nx, v.len()).iter().map(|u| self.value(u, v).unwrap()).sum(),
            tol,
        )?;
        Ok((mx, my))
    }
}

/// η(u,v) = ζ(u)·f_A(u,v)
pub fn pair_from(zeta: &RandomSequence, a: &GeneralPA, tol: &Tolerances) -> Result<PairedSequence> {
    if zeta.alphabet() != a.inputs() {
        return Err(Error::AlphabetMismatch);
    }
    let ny = a.outputs().len();
    let m = a.inputs().len() * ny;
    let table = WordTable::from_fn(m, zeta.depth(), |w| {
        let u: Word = w.iter().map(|l| l / ny).collect();
        let v: Word = w.iter().map(|l| l % ny).collect();
        zeta.table.at(&u) * a.reaction(&u, &v).expect("indices in range")
    });
    let p = PairedSequence {
        inputs: a.inputs().clone(),
        outputs: a.outputs().clone(),
        table,
    };
    if !p.is_valid(tol) {
        return Err(Error::Invalid("paired sequence fails normalization".into()));
    }
    Ok(p)
}

/// ζ_A = η^Y
pub fn transform(zeta: &RandomSequence, a: &GeneralPA, tol: &Tolerances) -> Result<RandomSequence> {
    Ok(pair_from(zeta, a, tol)?.marginals(tol)?.1)
}

/// States labeled by signals; f(x₀…x_k) = ξ⁰E^{x₀}M E^{x₁}…M E^{x_k}I.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    signals: Alphabet,
    transition: StochasticMatrix,
    labels: Vec<usize>,
    initial: Distribution,
}

impl MarkovChain {
    pub fn new(signals: Alphabet, transition: Matrix, labels: Vec<usize>, initial: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let n = transition.rows();
        if !transition.is_square() || labels.len() != n || initial.len() != n {
            return Err(Error::Dimension("chain sizes".into()));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= signals.len()) {
            return Err(Error::UnknownSymbol(format!("label #{}", l)));
        }
        Ok(MarkovChain {
            signals,
            transition: StochasticMatrix::new(transition, tol)?,
            labels,
            initial: Distribution::new(initial, tol)?,
        })
    }

    pub fn signals(&self) -> &Alphabet {
        &self.signals
    }

    pub fn transition(&self) -> &Matrix {
        self.transition.matrix()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn initial(&self) -> &[f64] {
        self.initial.as_slice()
    }

    fn mask(&self, r: &mut [f64], x: usize) {
        for (s, v) in r.iter_mut().enumerate() {
            if self.labels[s] != x {
                *v = 0.0;
            }
        }
    }

    pub fn function(&self, u: &[usize]) -> Result<f64> {
        if let Some(&x) = u.iter().find(|&&x| x >= self.signals.len()) {
            return Err(Error::UnknownSymbol(format!("signal #{}", x)));
        }
        let Some((&first, rest)) = u.split_first() else {
            return Ok(1.0);
        };
        let mut r = self.initial().to_vec();
        self.mask(&mut r, first);
        for &x in rest {
            r = self.transition().vec_mul(&r);
            self.mask(&mut r, x);
        }
        Ok(r.iter().sum())
    }

    pub fn to_random_sequence(&self, depth: usize, tol: &Tolerances) -> Result<RandomSequence> {
        RandomSequence::from_fn(self.signals.clone(), depth, |u| self.function(u).unwrap(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn coin(depth: usize) -> RandomSequence {
        RandomSequence::from_fn(Alphabet::new(["h", "t"]).unwrap(), depth, |u| 0.5f64.powi(u.len() as i32), &t()).unwrap()
    }

    fn rabin() -> GeneralPA {
        GeneralPA::new(
            Alphabet::new(["x"]).unwrap(),
            Alphabet::new(["y", "z"]).unwrap(),
            vec![
                Matrix::from_rows(&[vec![0.5, 0.25], vec![0.0, 0.5]]).unwrap(),
                Matrix::from_rows(&[vec![0.25, 0.0], vec![0.25, 0.25]]).unwrap(),
            ],
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap()
    }

    #[test]
    fn coin_residuals_and_automaton() {
        let z = coin(5);
        assert_eq!(z.residual(&[], &t()).unwrap(), z);
        for u in words_up_to(2, 3) {
            assert!(z.residual(&u, &t()).unwrap().agrees(&z, 1e-15));
        }
        let a = z.automaton(&t()).unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.trans(0, 0)[(0, 0)], 0.5);
        assert_eq!(a.trans(0, 1)[(0, 0)], 0.5);
        for u in words_up_to(2, 5) {
            let e = vec![0; u.len()];
            assert!((a.reaction(&e, &u).unwrap() - z.value(&u).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn point_mass_sequence() {
        let z = RandomSequence::from_fn(
            Alphabet::new(["x", "y"]).unwrap(),
            4,
            |u| if u.iter().all(|&s| s == 0) { 1.0 } else { 0.0 },
            &t(),
        )
        .unwrap();
        let a = z.automaton(&t()).unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.trans(0, 0)[(0, 0)], 1.0);
    }

    #[test]
    fn residual_composition() {
        let mc = MarkovChain::new(
            Alphabet::new(["a", "b"]).unwrap(),
            Matrix::from_rows(&[vec![0.3, 0.7], vec![0.6, 0.4]]).unwrap(),
            vec![0, 1],
            vec![0.5, 0.5],
            &t(),
        )
        .unwrap();
        let z = mc.to_random_sequence(5, &t()).unwrap();
        let r1 = z.residual(&[0], &t()).unwrap().residual(&[1], &t()).unwrap();
        let r2 = z.residual(&[0, 1], &t()).unwrap();
        assert!(r1.agrees(&r2, 1e-12));
    }

    #[test]
    fn markov_cycle() {
        let mc = MarkovChain::new(
            Alphabet::new(["a", "b"]).unwrap(),
            Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            vec![0, 1],
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap();
        assert_eq!(mc.function(&[0, 1]).unwrap(), 1.0);
        assert_eq!(mc.function(&[0, 0]).unwrap(), 0.0);
        assert_eq!(mc.function(&[]).unwrap(), 1.0);
        assert!(mc.to_random_sequence(6, &t()).is_ok());
    }

    #[test]
    fn pairing_and_marginals() {
        let z = RandomSequence::from_fn(Alphabet::new(["x"]).unwrap(), 2, |_| 1.0, &t()).unwrap();
        let eta = pair_from(&z, &rabin(), &t()).unwrap();
        assert!(eta.is_valid(&t()));
        let (mx, my) = eta.marginals(&t()).unwrap();
        assert!(mx.agrees(&z, 1e-15));
        assert!((my.value(&[0]).unwrap() - 0.75).abs() < 1e-15);
        assert!((eta.value(&[0, 0], &[0, 0]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_transducer() {
        let x = Alphabet::new(["h", "t"]).unwrap();
        let id = GeneralPA::new(
            x.clone(),
            x.clone(),
            vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::zeros(1, 1), Matrix::identity(1)],
            vec![1.0],
            &t(),
        )
        .unwrap();
        let z = coin(3);
        let eta = pair_from(&z, &id, &t()).unwrap();
        assert_eq!(eta.value(&[0, 1], &[0, 1]).unwrap(), 0.25);
        assert_eq!(eta.value(&[0, 1], &[1, 1]).unwrap(), 0.0);
        let (mx, my) = eta.marginals(&t()).unwrap();
        assert!(mx.agrees(&z, 1e-15) && my.agrees(&z, 1e-15));
    }

    #[test]
    fn constant_output_transform_is_point_mass() {
        let x = Alphabet::new(["h", "t"]).unwrap();
        let y = Alphabet::new(["o", "p"]).unwrap();
        let c = GeneralPA::new(
            x,
            y,
            vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::identity(1), Matrix::zeros(1, 1)],
            vec![1.0],
            &t(),
        )
        .unwrap();
        let out = transform(&coin(3), &c, &t()).unwrap();
        assert_eq!(out.value(&[0, 0, 0]).unwrap(), 1.0);
        assert_eq!(out.value(&[0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_tables() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert!(RandomSequence::new(a.clone(), 1, vec![1.0, 0.5, 0.4], &t()).is_err());
        assert!(RandomSequence::new(a, 1, vec![0.9, 0.5, 0.4], &t()).is_err());
    }
}
