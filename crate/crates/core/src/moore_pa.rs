//! Moore automata with numeric output (ξ⁰, {A^x}, λ): averaged reactions,
//! averaged basis matrices and reduction, Mealy/Moore classification, DFA embedding.

use crate::closure::forward_table;
use crate::error::{Error, Result};
use crate::general_pa::{certificate_residual, convex_lp_split, rows_agree, substitution, ConvexCertificate, GeneralPA};
use crate::languages::Dfa;
use crate::linalg::{dot, Distribution, Matrix, StochasticMatrix, Subspace, Tolerances};
use crate::words::{concat, Alphabet, Word};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub struct MoorePA {
    inputs: Alphabet,
    trans: Vec<StochasticMatrix>,
    initial: Distribution,
    lambda: Vec<f64>,
}

/// Columns A^uλ with their tags u.
#[derive(Debug, Clone)]
pub struct AvgBasisMatrix {
    pub columns: Matrix,
    pub tags: Vec<Word>,
    pub sweeps: usize,
}

impl AvgBasisMatrix {
    pub fn rank(&self) -> usize {
        self.columns.cols()
    }

    pub fn project(&self, xi: &[f64]) -> Vec<f64> {
        self.columns.vec_mul(xi)
    }
}

impl MoorePA {
    pub fn new(inputs: Alphabet, trans: Vec<Matrix>, initial: Vec<f64>, lambda: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let n = initial.len();
        if trans.len() != inputs.len() {
            return Err(Error::Dimension(format!("{} matrices for {} inputs", trans.len(), inputs.len())));
        }
        if lambda.len() != n {
            return Err(Error::Dimension(format!("λ has {} entries for {} states", lambda.len(), n)));
        }
        if lambda.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite λ".into()));
        }
        let mut st = Vec::with_capacity(trans.len());
        for (x, m) in trans.into_iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "A^{} is {}x{}, expected {}x{}",
                    inputs.symbol(x),
                    m.rows(),
                    m.cols(),
                    n,
                    n
                )));
            }
            st.push(StochasticMatrix::new(m, tol).map_err(|e| e.context(&format!("A^{}", inputs.symbol(x))))?);
        }
        Ok(MoorePA {
            inputs,
            trans: st,
            initial: Distribution::new(initial, tol)?,
            lambda,
        })
    }

    pub(crate) fn new_unchecked(inputs: Alphabet, trans: Vec<Matrix>, initial: Vec<f64>, lambda: Vec<f64>) -> Self {
        MoorePA {
            inputs,
            trans: trans.into_iter().map(StochasticMatrix::new_unchecked).collect(),
            initial: Distribution::new_unchecked(initial),
            lambda,
        }
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn trans(&self, x: usize) -> &Matrix {
        self.trans[x].matrix()
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.trans.iter().map(|m| m.matrix().clone()).collect()
    }

    pub fn initial(&self) -> &[f64] {
        self.initial.as_slice()
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
        Ok(u.iter().fold(Matrix::identity(self.n()), |acc, &x| acc.mul(self.trans(x))))
    }

    /// ξ⁰A^u
    pub fn state_after(&self, u: &[usize]) -> Result<Vec<f64>> {
        self.check_word(u)?;
        Ok(u.iter().fold(self.initial().to_vec(), |r, &x| self.trans(x).vec_mul(&r)))
    }

    /// ξ⁰A^uλ
    pub fn avg_reaction(&self, u: &[usize]) -> Result<f64> {
        Ok(dot(&self.state_after(u)?, &self.lambda))
    }

    pub fn avg_reaction_from(&self, xi: &[f64], u: &[usize]) -> Result<f64> {
        self.check_word(u)?;
        if xi.len() != self.n() {
            return Err(Error::Dimension("distribution length".into()));
        }
        let r = u.iter().fold(xi.to_vec(), |r, &x| self.trans(x).vec_mul(&r));
        Ok(dot(&r, &self.lambda))
    }

    /// Averaged reactions of all words of length ≤ depth, shortlex order.
    pub fn reactions_up_to(&self, depth: usize) -> Vec<f64> {
        forward_table(
            self.inputs.len(),
            depth,
            self.initial().to_vec(),
            |r, x| self.trans(x).vec_mul(r),
            |r| dot(r, &self.lambda),
        )
        .values
    }

    /// Columns A^uλ spanning the averaged space, breadth-first from λ.
    pub fn avg_basis_matrix(&self, tol: &Tolerances) -> AvgBasisMatrix {
        let n = self.n();
        let mut space = Subspace::new(n, tol.rank);
        let mut cols: Vec<Vec<f64>> = Vec::new();
        let mut tags: Vec<Word> = Vec::new();
        let mut frontier = Vec::new();
        if space.try_add(&self.lambda).expect("dimension matches") {
            cols.push(self.lambda.clone());
            tags.push(Vec::new());
            frontier.push(0);
        }
        let mut sweeps = 0;
        while !frontier.is_empty() {
            let mut grown = Vec::new();
            for &c in &frontier {
                for x in 0..self.inputs.len() {
                    let v = self.trans(x).mul_vec(&cols[c]);
                    if space.try_add(&v).expect("dimension matches") {
                        tags.push(concat(&[x], &tags[c]));
                        cols.push(v);
                        grown.push(cols.len() - 1);
                    }
                }
            }
            if grown.is_empty() {
                break;
            }
            sweeps += 1;
            frontier = grown;
        }
        let columns = if cols.is_empty() {
            // λ = 0: every reaction vanishes; keep the zero column so ξ[[A]] is defined
            Matrix::zeros(n, 1)
        } else {
            Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
        };
        if cols.is_empty() {
            tags.push(Vec::new());
        }
        AvgBasisMatrix { columns, tags, sweeps }
    }

    pub fn avg_distributions_equivalent(&self, xi1: &[f64], xi2: &[f64], tol: &Tolerances) -> Result<bool> {
        if xi1.len() != self.n() || xi2.len() != self.n() {
            return Err(Error::Dimension("distribution length".into()));
        }
        let b = self.avg_basis_matrix(tol);
        Ok(rows_agree(&b.project(xi1), &b.project(xi2), tol))
    }

    pub fn disjoint_union(&self, other: &MoorePA) -> Result<MoorePA> {
        if self.inputs != other.inputs {
            return Err(Error::AlphabetMismatch);
        }
        let trans = (0..self.inputs.len())
            .map(|x| Matrix::block_diag(&[self.trans(x), other.trans(x)]))
            .collect();
        let mut initial = self.initial().to_vec();
        initial.resize(self.n() + other.n(), 0.0);
        let lambda = [self.lambda.clone(), other.lambda.clone()].concat();
        Ok(MoorePA::new_unchecked(self.inputs.clone(), trans, initial, lambda))
    }

    pub fn avg_equivalent(&self, other: &MoorePA, tol: &Tolerances) -> Result<bool> {
        let u = self.disjoint_union(other)?;
        let mut xi2 = vec![0.0; self.n()];
        xi2.extend_from_slice(other.initial());
        u.avg_distributions_equivalent(u.initial(), &xi2, tol)
    }

    fn reachable_states(&self, tol: &Tolerances) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| self.initial()[s] > tol.zero).collect();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for m in &self.trans {
                for t in 0..n {
                    if !seen[t] && m[(s, t)] > tol.zero {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        (0..n).filter(|&s| seen[s]).collect()
    }

    pub fn reachable_part(&self, tol: &Tolerances) -> MoorePA {
        let keep = self.reachable_states(tol);
        if keep.len() == self.n() {
            return self.clone();
        }
        MoorePA::new_unchecked(
            self.inputs.clone(),
            self.trans.iter().map(|m| m.select(&keep, &keep)).collect(),
            keep.iter().map(|&s| self.initial()[s]).collect(),
            keep.iter().map(|&s| self.lambda[s]).collect(),
        )
    }

    /// Highest-index state whose [[A]] row is a convex combination of the others.
    pub fn find_convex_state(&self, tol: &Tolerances) -> Option<ConvexCertificate> {
        let rows = self.avg_basis_matrix(tol).columns.to_rows();
        (0..self.n()).rev().find_map(|s| convex_lp_split(&rows, s, tol))
    }

    /// ξ⁰(E;ξ), (E 0)A^x(E;ξ), (E 0)λ with state s moved last.
    pub fn remove_convex_state(&self, cert: &ConvexCertificate, tol: &Tolerances) -> Result<MoorePA> {
        let rows = self.avg_basis_matrix(tol).columns.to_rows();
        let residual = certificate_residual(&rows, cert)?;
        if residual > tol.lp {
            return Err(Error::Certificate(residual));
        }
        let m = substitution(self.n(), cert);
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != cert.state).collect();
        let xi = m.vec_mul(self.initial());
        Ok(MoorePA::new_unchecked(
            self.inputs.clone(),
            self.trans.iter().map(|a| a.mul(&m).select(&keep, &keep)).collect(),
            keep.iter().map(|&s| xi[s]).collect(),
            keep.iter().map(|&s| self.lambda[s]).collect(),
        ))
    }

    pub fn reduce_avg(&self, tol: &Tolerances) -> MoorePA {
        let mut a = self.reachable_part(tol);
        while a.n() > 1 {
            let Some(cert) = a.find_convex_state(tol) else { break };
            match a.remove_convex_state(&cert, tol) {
                Ok(b) => a = b.reachable_part(tol),
                Err(_) => break,
            }
        }
        a
    }

    /// General-form view emitting y = λ(s) from the current state; output symbols are the
    /// distinct λ values.
    pub fn to_general_pa(&self, tol: &Tolerances) -> Result<GeneralPA> {
        let mut values: Vec<f64> = Vec::new();
        for &v in &self.lambda {
            if !values.contains(&v) {
                values.push(v);
            }
        }
        let outputs = Alphabet::new(values.iter().map(|v| format!("{}", v)))?;
        let ny = values.len();
        let n = self.n();
        let mut trans = Vec::with_capacity(self.inputs.len() * ny);
        for x in 0..self.inputs.len() {
            for &yv in &values {
                trans.push(Matrix::from_fn(n, n, |s, t| {
                    if self.lambda[s] == yv {
                        self.trans(x)[(s, t)]
                    } else {
                        0.0
                    }
                }));
            }
        }
        GeneralPA::new(self.inputs.clone(), outputs, trans, self.initial().to_vec(), tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaClass {
    /// Moore automaton whose output is a function of the state.
    MooreDetOut,
    /// Output distribution depends on the state only.
    Moore,
    /// P(s,x,s′,y) = δ(s,x,s′)·λ(s,x,y)
    Mealy,
    General,
}

pub fn classify(a: &GeneralPA, tol: &Tolerances) -> PaClass {
    let (nx, ny, n) = (a.inputs().len(), a.outputs().len(), a.n());
    let delta = |s: usize, x: usize, t: usize| (0..ny).map(|y| a.trans(x, y)[(s, t)]).sum::<f64>();
    let out = |s: usize, x: usize, y: usize| a.trans(x, y).row(s).iter().sum::<f64>();
    for x in 0..nx {
        for y in 0..ny {
            for s in 0..n {
                for t in 0..n {
                    if (a.trans(x, y)[(s, t)] - delta(s, x, t) * out(s, x, y)).abs() > tol.sum {
                        return PaClass::General;
                    }
                }
            }
        }
    }
    for s in 0..n {
        for y in 0..ny {
            let first = out(s, 0, y);
            if (1..nx).any(|x| (out(s, x, y) - first).abs() > tol.sum) {
                return PaClass::Mealy;
            }
        }
    }
    let deterministic = (0..n).all(|s| {
        (0..ny).all(|y| {
            let v = out(s, 0, y);
            v.abs() <= tol.sum || (v - 1.0).abs() <= tol.sum
        })
    });
    if deterministic {
        PaClass::MooreDetOut
    } else {
        PaClass::Moore
    }
}

/// 0/1 matrices A^x_{s,s′} = [δ(s,x)=s′], ξ⁰ the start point mass, λ the acceptance indicator.
pub fn dfa_to_pa(d: &Dfa) -> MoorePA {
    let n = d.n();
    let trans = (0..d.alphabet().len())
        .map(|x| Matrix::from_fn(n, n, |s, t| if d.next(s, x) == t { 1.0 } else { 0.0 }))
        .collect();
    let mut initial = vec![0.0; n];
    initial[d.start()] = 1.0;
    let lambda = (0..n).map(|s| if d.is_accepting(s) { 1.0 } else { 0.0 }).collect();
    MoorePA::new_unchecked(d.alphabet().clone(), trans, initial, lambda)
}

pub fn dfa_reachable_part(d: &Dfa) -> (Dfa, usize) {
    d.reachable_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn cantor() -> MoorePA {
        MoorePA::new(
            Alphabet::new(["0", "2"]).unwrap(),
            vec![
                Matrix::from_rows(&[vec![1.0, 0.0], vec![2.0 / 3.0, 1.0 / 3.0]]).unwrap(),
                Matrix::from_rows(&[vec![1.0 / 3.0, 2.0 / 3.0], vec![0.0, 1.0]]).unwrap(),
            ],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            &t(),
        )
        .unwrap()
    }

    fn constant(v: f64) -> MoorePA {
        MoorePA::new(Alphabet::new(["x"]).unwrap(), vec![Matrix::identity(1)], vec![1.0], vec![v], &t()).unwrap()
    }

    #[test]
    fn cantor_reactions() {
        let a = cantor();
        assert!((a.avg_reaction(&[1]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((a.avg_reaction(&[1, 0]).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        assert_eq!(a.avg_reaction(&[]).unwrap(), 0.0);
        assert_eq!(a.reactions_up_to(2).len(), 7);
        assert!(a.avg_reaction(&[2]).is_err());
    }

    #[test]
    fn constant_lambda() {
        let a = MoorePA::new(
            Alphabet::new(["x", "y"]).unwrap(),
            vec![
                Matrix::from_rows(&[vec![0.2, 0.8], vec![0.5, 0.5]]).unwrap(),
                Matrix::from_rows(&[vec![1.0, 0.0], vec![0.3, 0.7]]).unwrap(),
            ],
            vec![0.4, 0.6],
            vec![0.25, 0.25],
            &t(),
        )
        .unwrap();
        for u in words_up_to(2, 4) {
            assert!((a.avg_reaction(&u).unwrap() - 0.25).abs() < 1e-15);
        }
        assert_eq!(a.avg_basis_matrix(&t()).rank(), 1);
    }

    #[test]
    fn basis_ranks() {
        let b = cantor().avg_basis_matrix(&t());
        assert_eq!(b.rank(), 2);
        assert_eq!(b.tags, vec![vec![], vec![1]]);
    }

    #[test]
    fn avg_equivalences() {
        let two = MoorePA::new(
            Alphabet::new(["x"]).unwrap(),
            vec![Matrix::identity(2)],
            vec![0.5, 0.5],
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap();
        assert!(constant(0.5).avg_equivalent(&two, &t()).unwrap());
        let c1 = MoorePA::new(
            Alphabet::new(["0", "2"]).unwrap(),
            vec![Matrix::identity(1); 2],
            vec![1.0],
            vec![0.0],
            &t(),
        )
        .unwrap();
        assert!(!cantor().avg_equivalent(&c1, &t()).unwrap());
        assert!(cantor().avg_equivalent(&cantor(), &t()).unwrap());
    }

    #[test]
    fn reduce_three_state() {
        let a = MoorePA::new(
            Alphabet::new(["x"]).unwrap(),
            vec![Matrix::identity(3)],
            vec![1.0 / 3.0; 3],
            vec![0.0, 1.0, 0.5],
            &t(),
        )
        .unwrap();
        let cert = a.find_convex_state(&t()).unwrap();
        assert_eq!(cert.state, 2);
        assert!((cert.coefficients[0] - 0.5).abs() < 1e-12);
        let r = a.reduce_avg(&t());
        assert_eq!(r.n(), 2);
        assert!(a.avg_equivalent(&r, &t()).unwrap());
        for m in r.matrices() {
            for s in m.row_sums() {
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(cantor().reduce_avg(&t()), cantor());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&cantor().to_general_pa(&t()).unwrap(), &t()), PaClass::MooreDetOut);
        let rabin = GeneralPA::new(
            Alphabet::new(["x"]).unwrap(),
            Alphabet::new(["y", "z"]).unwrap(),
            vec![
                Matrix::from_rows(&[vec![0.5, 0.25], vec![0.0, 0.5]]).unwrap(),
                Matrix::from_rows(&[vec![0.25, 0.0], vec![0.25, 0.25]]).unwrap(),
            ],
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap();
        assert_eq!(classify(&rabin, &t()), PaClass::General);
        // δ(s,x,·) and λ(s,x,·) chosen independently, λ depends on x
        let d = [[0.3, 0.7], [0.6, 0.4]];
        let l = [[0.2, 0.8], [0.9, 0.1]];
        let mut trans = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                trans.push(Matrix::from_fn(2, 2, |s, t| d[s][t] * if s == 0 { l[x][y] } else { l[1 - x][y] }));
            }
        }
        let mealy = GeneralPA::new(
            Alphabet::new(["a", "b"]).unwrap(),
            Alphabet::new(["p", "q"]).unwrap(),
            trans,
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap();
        assert_eq!(classify(&mealy, &t()), PaClass::Mealy);
    }

    #[test]
    fn dfa_embedding() {
        let d = Dfa::new(
            Alphabet::new(["0", "2"]).unwrap(),
            0,
            vec![vec![0, 1], vec![0, 1]],
            vec![false, true],
        )
        .unwrap();
        let pa = dfa_to_pa(&d);
        for u in words_up_to(2, 4) {
            let f = pa.avg_reaction(&u).unwrap();
            assert_eq!(f, if d.accepts(&u) { 1.0 } else { 0.0 });
        }
        let empty = Dfa::new(Alphabet::new(["a"]).unwrap(), 0, vec![vec![0]], vec![false]).unwrap();
        assert!(dfa_to_pa(&empty).reactions_up_to(4).iter().all(|&v| v == 0.0));
        let sink = Dfa::new(Alphabet::new(["a"]).unwrap(), 0, vec![vec![1], vec![1]], vec![false, true]).unwrap();
        assert!(dfa_to_pa(&sink).reactions_up_to(4)[1..].iter().all(|&v| v == 1.0));
    }
}
