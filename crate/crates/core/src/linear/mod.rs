//! Linear (weighted) automata (ξ⁰, {L^x}, λ) and functions on strings.

mod embed;
mod expr;
mod hankel;
mod table;

pub use embed::{la_language_pa, la_to_pa_affine, laf_from_level_dfas};
pub use expr::{eval_expr, la_to_rational_expr, RationalExpr};
pub use hankel::{disting_degree, e_f_dimension, hankel_basis, hankel_block, reach_degree, realize, HankelBasis};
pub use table::{StringFunction, StringFunctionTable};

use crate::closure::forward_table;
use crate::error::{Error, Result};
use crate::linalg::{dot, kron_vec, Matrix, Subspace, Tolerances};
use crate::words::Alphabet;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearAutomaton {
    inputs: Alphabet,
    initial: Vec<f64>,
    trans: Vec<Matrix>,
    lambda: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaBinary {
    Sum,
    Product,
    Convolution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaUnary {
    Scale(f64),
    Reverse,
    Iterate,
}

impl LinearAutomaton {
    pub fn new(inputs: Alphabet, initial: Vec<f64>, trans: Vec<Matrix>, lambda: Vec<f64>) -> Result<Self> {
        let n = initial.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if lambda.len() != n {
            return Err(Error::Dimension(format!("λ has {} entries, ξ⁰ has {}", lambda.len(), n)));
        }
        if trans.len() != inputs.len() {
            return Err(Error::Dimension(format!("{} matrices for {} inputs", trans.len(), inputs.len())));
        }
        for (x, m) in trans.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "L^{} is {}x{}, expected {}x{}",
                    inputs.symbol(x),
                    m.rows(),
                    m.cols(),
                    n,
                    n
                )));
            }
        }
        if initial.iter().chain(&lambda).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite entry".into()));
        }
        Ok(LinearAutomaton {
            inputs,
            initial,
            trans,
            lambda,
        })
    }

    /// Dimension-1 automaton computing the zero function.
    pub fn zero(inputs: Alphabet) -> Self {
        let m = inputs.len();
        LinearAutomaton {
            inputs,
            initial: vec![0.0],
            trans: vec![Matrix::zeros(1, 1); m],
            lambda: vec![0.0],
        }
    }

    /// χ_x as a dimension-2 automaton.
    pub fn letter(inputs: Alphabet, x: usize) -> Self {
        let trans = (0..inputs.len())
            .map(|y| {
                if y == x {
                    Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { 1.0 } else { 0.0 })
                } else {
                    Matrix::zeros(2, 2)
                }
            })
            .collect();
        LinearAutomaton {
            inputs,
            initial: vec![1.0, 0.0],
            trans,
            lambda: vec![0.0, 1.0],
        }
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn trans(&self, x: usize) -> &Matrix {
        &self.trans[x]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.trans
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    fn check_word(&self, u: &[usize]) -> Result<()> {
        match u.iter().find(|&&x| x >= self.inputs.len()) {
            Some(x) => Err(Error::UnknownSymbol(format!("input #{}", x))),
            None => Ok(()),
        }
    }

    pub fn word_matrix(&self, u: &[usize]) -> Result<Matrix> {
        self.check_word(u)?;
        Ok(u.iter().fold(Matrix::identity(self.dim()), |acc, &x| acc.mul(&self.trans[x])))
    }

    /// ξ⁰L^uλ
    pub fn reaction(&self, u: &[usize]) -> Result<f64> {
        self.check_word(u)?;
        let r = u.iter().fold(self.initial.clone(), |r, &x| self.trans[x].vec_mul(&r));
        Ok(dot(&r, &self.lambda))
    }

    pub fn table(&self, depth: usize) -> StringFunctionTable {
        let t = forward_table(
            self.inputs.len(),
            depth,
            self.initial.clone(),
            |r, x| self.trans[x].vec_mul(r),
            |r| dot(r, &self.lambda),
        );
        StringFunctionTable::new(self.inputs.clone(), depth, t.values).expect("table size matches")
    }

    pub fn combine(&self, op: LaBinary, other: &LinearAutomaton) -> Result<LinearAutomaton> {
        if self.inputs != other.inputs {
            return Err(Error::AlphabetMismatch);
        }
        let (n1, n2) = (self.dim(), other.dim());
        let m = self.inputs.len();
        let la = match op {
            LaBinary::Sum => LinearAutomaton {
                inputs: self.inputs.clone(),
                initial: [self.initial.clone(), other.initial.clone()].concat(),
                trans: (0..m).map(|x| Matrix::block_diag(&[&self.trans[x], &other.trans[x]])).collect(),
                lambda: [self.lambda.clone(), other.lambda.clone()].concat(),
            },
            LaBinary::Product => LinearAutomaton {
                inputs: self.inputs.clone(),
                initial: kron_vec(&self.initial, &other.initial),
                trans: (0..m).map(|x| self.trans[x].kron(&other.trans[x])).collect(),
                lambda: kron_vec(&self.lambda, &other.lambda),
            },
            LaBinary::Convolution => {
                // M = λ₁ξ₂⁰
                let mm = Matrix::from_fn(n1, n2, |i, j| self.lambda[i] * other.initial[j]);
                let trans = (0..m)
                    .map(|x| {
                        let mut t = Matrix::zeros(n1 + n2, n1 + n2);
                        t.set_block(0, 0, &self.trans[x]);
                        t.set_block(0, n1, &self.trans[x].mul(&mm));
                        t.set_block(n1, n1, &other.trans[x]);
                        t
                    })
                    .collect();
                LinearAutomaton {
                    inputs: self.inputs.clone(),
                    initial: [self.initial.clone(), mm.vec_mul(&self.initial)].concat(),
                    trans,
                    lambda: [vec![0.0; n1], other.lambda.clone()].concat(),
                }
            }
        };
        Ok(la)
    }

    pub fn unary(&self, op: LaUnary, tol: &Tolerances) -> Result<LinearAutomaton> {
        let la = match op {
            LaUnary::Scale(a) => {
                if !a.is_finite() {
                    return Err(Error::Invalid("non-finite scale".into()));
                }
                LinearAutomaton {
                    lambda: self.lambda.iter().map(|v| a * v).collect(),
                    ..self.clone()
                }
            }
            LaUnary::Reverse => LinearAutomaton {
                inputs: self.inputs.clone(),
                initial: self.lambda.clone(),
                trans: self.trans.iter().map(|m| m.transpose()).collect(),
                lambda: self.initial.clone(),
            },
            LaUnary::Iterate => {
                let f0 = dot(&self.initial, &self.lambda);
                if f0.abs() > tol.zero {
                    return Err(Error::Invalid(format!("iteration needs f(ε) = 0, got {}", f0)));
                }
                let n = self.dim();
                let e = Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + self.lambda[i] * self.initial[j]);
                LinearAutomaton {
                    trans: self.trans.iter().map(|m| m.mul(&e)).collect(),
                    ..self.clone()
                }
            }
        };
        Ok(la)
    }

    /// f_self ≡ f_other, decided on a basis of the reachable row space of the difference automaton.
    pub fn equivalent(&self, other: &LinearAutomaton, tol: &Tolerances) -> Result<bool> {
        let d = self.combine(LaBinary::Sum, &other.unary(LaUnary::Scale(-1.0), tol)?)?;
        let scale = d.lambda.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let mut space = Subspace::new(d.dim(), tol.rank);
        let mut frontier = Vec::new();
        if space.try_add(&d.initial)? {
            frontier.push(d.initial.clone());
        }
        while let Some(v) = frontier.pop() {
            let size = v.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
            if dot(&v, &d.lambda).abs() > tol.rank * size * scale * d.dim() as f64 {
                return Ok(false);
            }
            for m in &d.trans {
                let w = m.vec_mul(&v);
                if space.try_add(&w)? {
                    frontier.push(w);
                }
            }
        }
        Ok(true)
    }

    /// (ξ⁰P, P⁻¹L^xP, P⁻¹λ)
    pub fn change_basis(&self, p: &Matrix) -> Result<LinearAutomaton> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(Error::Dimension("basis change".into()));
        }
        let pi = p.inverse()?;
        Ok(LinearAutomaton {
            inputs: self.inputs.clone(),
            initial: p.vec_mul(&self.initial),
            trans: self.trans.iter().map(|m| pi.mul(m).mul(p)).collect(),
            lambda: pi.mul_vec(&self.lambda),
        })
    }
}

impl StringFunction for LinearAutomaton {
    fn alphabet(&self) -> &Alphabet {
        &self.inputs
    }

    fn eval(&self, u: &[usize]) -> Result<f64> {
        self.reaction(u)
    }

    fn max_len(&self) -> Option<usize> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;

    fn x() -> Alphabet {
        Alphabet::new(["x"]).unwrap()
    }

    fn geometric(r: f64) -> LinearAutomaton {
        LinearAutomaton::new(x(), vec![1.0], vec![Matrix::from_rows(&[vec![r]]).unwrap()], vec![1.0]).unwrap()
    }

    #[test]
    fn equivalence() {
        let x = Alphabet::new(["x"]).unwrap();
        let a = LinearAutomaton::new(x.clone(), vec![1.0], vec![Matrix::filled(1, 1, 0.5)], vec![1.0]).unwrap();
        let b = LinearAutomaton::new(x.clone(), vec![2.0, 0.0], vec![Matrix::identity(2).scale(0.5)], vec![0.5, 3.0]).unwrap();
        assert!(a.equivalent(&b, &Tolerances::default()).unwrap());
        let c = LinearAutomaton::letter(x, 0);
        assert!(!a.equivalent(&c, &Tolerances::default()).unwrap());
    }

    #[test]
    fn letter_function() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let l = LinearAutomaton::letter(xy.clone(), 0);
        for u in words_up_to(2, 3) {
            assert_eq!(l.reaction(&u).unwrap(), if u == [0] { 1.0 } else { 0.0 });
        }
        let c = l.combine(LaBinary::Convolution, &LinearAutomaton::letter(xy, 1)).unwrap();
        for u in words_up_to(2, 3) {
            assert_eq!(c.reaction(&u).unwrap(), if u == [0, 1] { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn geometric_ops() {
        let p = geometric(0.5).combine(LaBinary::Product, &geometric(1.0 / 3.0)).unwrap();
        for k in 0..6 {
            assert!((p.reaction(&vec![0; k]).unwrap() - 6f64.powi(-(k as i32))).abs() < 1e-15);
        }
        let s = geometric(0.5).combine(LaBinary::Sum, &LinearAutomaton::zero(x())).unwrap();
        assert_eq!(s.table(5), geometric(0.5).table(5));
        assert_eq!(geometric(0.5).reaction(&[0, 0]).unwrap(), 0.25);
    }

    #[test]
    fn unary_ops() {
        let t = Tolerances::default();
        let l = LinearAutomaton::letter(x(), 0);
        let it = l.unary(LaUnary::Iterate, &t).unwrap();
        assert_eq!(it.reaction(&[]).unwrap(), 0.0);
        for k in 1..6 {
            assert_eq!(it.reaction(&vec![0; k]).unwrap(), 1.0);
        }
        assert!(geometric(0.5).unary(LaUnary::Iterate, &t).is_err());
        let g = geometric(0.5);
        assert_eq!(g.unary(LaUnary::Reverse, &t).unwrap().unary(LaUnary::Reverse, &t).unwrap(), g);
        assert_eq!(g.unary(LaUnary::Scale(3.0), &t).unwrap().reaction(&[0]).unwrap(), 1.5);
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(LinearAutomaton::new(x(), vec![1.0, 0.0], vec![Matrix::identity(2)], vec![1.0]).is_err());
        assert!(LinearAutomaton::new(x(), vec![], vec![], vec![]).is_err());
    }
}
