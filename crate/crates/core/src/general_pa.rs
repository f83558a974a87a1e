//! Probabilistic transducers (ξ⁰, {A^{xy}}): reactions, basis matrices,
//! equivalence, reduction, residual reactions and cone realization.

use crate::closure::{forward_table, residual_closure, WordTable};
use crate::error::{Error, Result};
use crate::linalg::{lp_solve, Distribution, LpProblem, LpStatus, Matrix, Subspace, Tolerances};
use crate::words::{concat, Alphabet, Word};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralPA {
    inputs: Alphabet,
    outputs: Alphabet,
    /// A^{xy} at index x·|Y| + y
    trans: Vec<Matrix>,
    initial: Distribution,
}

/// Basis columns A^{u,v}I with their (u,v) tags.
#[derive(Debug, Clone)]
pub struct BasisMatrix {
    pub columns: Matrix,
    pub tags: Vec<(Word, Word)>,
    pub sweeps: usize,
}

impl BasisMatrix {
    pub fn rank(&self) -> usize {
        self.columns.cols()
    }

    /// ξ·[A]
    pub fn project(&self, xi: &[f64]) -> Vec<f64> {
        self.columns.vec_mul(xi)
    }
}

/// A state whose basis row is a convex combination of the other rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCertificate {
    pub state: usize,
    /// Length n; entry `state` is zero.
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

impl GeneralPA {
    pub fn new(inputs: Alphabet, outputs: Alphabet, trans: Vec<Matrix>, initial: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let n = initial.len();
        if trans.len() != inputs.len() * outputs.len() {
            return Err(Error::Dimension(format!(
                "{} transition matrices for {} input/output pairs",
                trans.len(),
                inputs.len() * outputs.len()
            )));
        }
        for (k, m) in trans.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "A^{{{}}} is {}x{}, expected {}x{}",
                    k,
                    m.rows(),
                    m.cols(),
                    n,
                    n
                )));
            }
            if m.min_entry() < -tol.nonneg {
                return Err(Error::Invalid(format!("negative entry in A^{{{}}}", k)));
            }
        }
        let ny = outputs.len();
        for x in 0..inputs.len() {
            for s in 0..n {
                let sum: f64 = (0..ny).map(|y| trans[x * ny + y].row(s).iter().sum::<f64>()).sum();
                if (sum - 1.0).abs() > tol.sum {
                    return Err(Error::Invalid(format!(
                        "input `{}`: row {} of Σ_y A^{{xy}} sums to {}",
                        inputs.symbol(x),
                        s,
                        sum
                    )));
                }
            }
        }
        let initial = Distribution::new(initial, tol)?;
        Ok(GeneralPA {
            inputs,
            outputs,
            trans,
            initial,
        })
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[f64] {
        self.initial.as_slice()
    }

    pub fn trans(&self, x: usize, y: usize) -> &Matrix {
        &self.trans[x * self.outputs.len() + y]
    }

    pub fn letter_count(&self) -> usize {
        self.trans.len()
    }

    fn letter(&self, l: usize) -> &Matrix {
        &self.trans[l]
    }

    fn check_word(&self, u: &[usize], v: &[usize]) -> Result<()> {
        if let Some(&x) = u.iter().find(|&&x| x >= self.inputs.len()) {
            return Err(Error::UnknownSymbol(format!("input #{}", x)));
        }
        if let Some(&y) = v.iter().find(|&&y| y >= self.outputs.len()) {
            return Err(Error::UnknownSymbol(format!("output #{}", y)));
        }
        Ok(())
    }

    /// A^{u,v}: identity for (ε,ε), zero when |u| ≠ |v|.
    pub fn word_matrix(&self, u: &[usize], v: &[usize]) -> Result<Matrix> {
        self.check_word(u, v)?;
        let n = self.n();
        if u.len() != v.len() {
            return Ok(Matrix::zeros(n, n));
        }
        Ok(u.iter().zip(v).fold(Matrix::identity(n), |acc, (&x, &y)| acc.mul(self.trans(x, y))))
    }

    pub fn reaction(&self, u: &[usize], v: &[usize]) -> Result<f64> {
        self.reaction_from(self.initial(), u, v)
    }

    /// ξ·A^{u,v}·I
    pub fn reaction_from(&self, xi: &[f64], u: &[usize], v: &[usize]) -> Result<f64> {
        self.check_word(u, v)?;
        if xi.len() != self.n() {
            return Err(Error::Dimension(format!(
                "distribution of length {} for {} states",
                xi.len(),
                self.n()
            )));
        }
        if u.len() != v.len() {
            return Ok(0.0);
        }
        let row = u.iter().zip(v).fold(xi.to_vec(), |r, (&x, &y)| self.trans(x, y).vec_mul(&r));
        Ok(row.iter().sum())
    }

    pub fn reaction_table(&self, depth: usize) -> ReactionTable {
        let table = forward_table(
            self.letter_count(),
            depth,
            self.initial().to_vec(),
            |r, l| self.letter(l).vec_mul(r),
            |r| r.iter().sum(),
        );
        ReactionTable {
            nx: self.inputs.len(),
            ny: self.outputs.len(),
            table,
        }
    }

    /// Columns A^{u,v}I spanning ⟨AI⟩, found breadth-first in lexicographic order.
    pub fn basis_matrix(&self, tol: &Tolerances) -> BasisMatrix {
        let n = self.n();
        let ny = self.outputs.len();
        let mut space = Subspace::new(n, tol.rank);
        let ones = vec![1.0; n];
        space.try_add(&ones).expect("dimension matches");
        let mut cols = vec![ones];
        let mut tags = vec![(Vec::new(), Vec::new())];
        let mut frontier = vec![0usize];
        let mut sweeps = 0;
        while !frontier.is_empty() {
            let mut grown = Vec::new();
            for &c in &frontier {
                for l in 0..self.letter_count() {
                    let v = self.letter(l).mul_vec(&cols[c]);
                    if space.try_add(&v).expect("dimension matches") {
                        let (u, w) = &tags[c];
                        tags.push((concat(&[l / ny], u), concat(&[l % ny], w)));
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
        let k = cols.len();
        let columns = Matrix::from_fn(n, k, |i, j| cols[j][i]);
        BasisMatrix { columns, tags, sweeps }
    }

    /// ξ₁[A] = ξ₂[A]
    pub fn distributions_equivalent(&self, xi1: &[f64], xi2: &[f64], tol: &Tolerances) -> Result<bool> {
        if xi1.len() != self.n() || xi2.len() != self.n() {
            return Err(Error::Dimension("distribution length".into()));
        }
        let b = self.basis_matrix(tol);
        Ok(rows_agree(&b.project(xi1), &b.project(xi2), tol))
    }

    /// Block-diagonal union; the initial distribution is that of `self` padded with zeros.
    pub fn disjoint_union(&self, other: &GeneralPA) -> Result<GeneralPA> {
        if self.inputs != other.inputs || self.outputs != other.outputs {
            return Err(Error::AlphabetMismatch);
        }
        let trans = self
            .trans
            .iter()
            .zip(&other.trans)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        let mut initial = self.initial().to_vec();
        initial.resize(self.n() + other.n(), 0.0);
        Ok(GeneralPA {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            trans,
            initial: Distribution::new_unchecked(initial),
        })
    }

    pub fn equivalent(&self, other: &GeneralPA, tol: &Tolerances) -> Result<bool> {
        let u = self.disjoint_union(other)?;
        let mut xi2 = vec![0.0; self.n()];
        xi2.extend_from_slice(other.initial());
        u.distributions_equivalent(u.initial(), &xi2, tol)
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

    /// Restriction to `keep`; rows are renormalized only implicitly (dropped mass ≤ tol_zero).
    fn restrict(&self, keep: &[usize]) -> GeneralPA {
        GeneralPA {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            trans: self.trans.iter().map(|m| m.select(keep, keep)).collect(),
            initial: Distribution::new_unchecked(keep.iter().map(|&s| self.initial()[s]).collect()),
        }
    }

    pub fn reachable_part(&self, tol: &Tolerances) -> GeneralPA {
        let keep = self.reachable_states(tol);
        if keep.len() == self.n() {
            return self.clone();
        }
        self.restrict(&keep)
    }

    /// Searches states from the highest index down for a basis row inside the
    /// convex hull of the other rows.
    pub fn find_convex_state(&self, tol: &Tolerances) -> Option<ConvexCertificate> {
        let b = self.basis_matrix(tol);
        let rows = b.columns.to_rows();
        (0..self.n()).rev().find_map(|s| convex_lp_slack(&rows, s, tol))
    }

    /// C^{xy} = A^{xy}M, ξ⁰M with M replacing state s by its certificate, then s is dropped.
    pub fn remove_convex_state(&self, cert: &ConvexCertificate, tol: &Tolerances) -> Result<GeneralPA> {
        let b = self.basis_matrix(tol);
        let rows = b.columns.to_rows();
        let residual = certificate_residual(&rows, cert)?;
        if residual > tol.lp {
            return Err(Error::Certificate(residual));
        }
        let m = substitution(self.n(), cert);
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != cert.state).collect();
        let trans = self.trans.iter().map(|a| a.mul(&m).select(&keep, &keep)).collect();
        let xi = m.vec_mul(self.initial());
        Ok(GeneralPA {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            trans,
            initial: Distribution::new_unchecked(keep.iter().map(|&s| xi[s]).collect()),
        })
    }

    /// Reachable part and convex-state removal repeated to a fixed point.
    pub fn reduce(&self, tol: &Tolerances) -> GeneralPA {
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
}

pub(crate) fn rows_agree(a: &[f64], b: &[f64], tol: &Tolerances) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= tol.rank * x.abs().max(y.abs()).max(1.0))
}

/// Identity except row s, which holds the certificate; column s is zero.
pub(crate) fn substitution(n: usize, cert: &ConvexCertificate) -> Matrix {
    let mut m = Matrix::identity(n);
    for j in 0..n {
        m[(cert.state, j)] = if j == cert.state { 0.0 } else { cert.coefficients[j] };
    }
    m
}

pub(crate) fn certificate_residual(rows: &[Vec<f64>], cert: &ConvexCertificate) -> Result<f64> {
    let n = rows.len();
    if cert.state >= n || cert.coefficients.len() != n {
        return Err(Error::Dimension("certificate size".into()));
    }
    if cert.coefficients[cert.state] != 0.0 {
        return Err(Error::Invalid("certificate weights its own state".into()));
    }
    let k = rows[0].len();
    let mut err = (cert.coefficients.iter().sum::<f64>() - 1.0).abs();
    for c in &cert.coefficients {
        err = err.max(-c);
    }
    for j in 0..k {
        let comb: f64 = (0..n).map(|i| cert.coefficients[i] * rows[i][j]).sum();
        err = err.max((comb - rows[cert.state][j]).abs());
    }
    Ok(err)
}

/// LP with one slack per basis column: (X,Y)(W;E) = row_s, Σx + Σy = 1, min Σy.
/// Column 0 of the basis must be the all-ones column.
fn convex_lp_slack(rows: &[Vec<f64>], s: usize, tol: &Tolerances) -> Option<ConvexCertificate> {
    let n = rows.len();
    let k = rows[0].len();
    let others: Vec<usize> = (0..n).filter(|&i| i != s).collect();
    let m = others.len();
    if m == 0 {
        return None;
    }
    let nv = m + k;
    let mut a = Matrix::zeros(k + 1, nv);
    let mut b = vec![0.0; k + 1];
    for j in 0..k {
        for (i, &o) in others.iter().enumerate() {
            a[(j, i)] = rows[o][j];
        }
        a[(j, m + j)] = 1.0;
        b[j] = rows[s][j];
    }
    for v in 0..nv {
        a[(k, v)] = 1.0;
    }
    b[k] = 1.0;
    let mut c = vec![0.0; nv];
    for cj in c.iter_mut().skip(m) {
        *cj = 1.0;
    }
    let sol = lp_solve(&LpProblem { c, a_eq: a, b }, tol.lp).ok()?;
    if sol.status != LpStatus::Optimal || sol.objective > tol.lp {
        return None;
    }
    finish_certificate(rows, s, &others, &sol.x[..m], tol)
}

/// LP with split residuals: Wᵀx + p − q = row_s, Σx = 1, min Σ(p+q).
pub(crate) fn convex_lp_split(rows: &[Vec<f64>], s: usize, tol: &Tolerances) -> Option<ConvexCertificate> {
    let n = rows.len();
    let k = rows[0].len();
    let others: Vec<usize> = (0..n).filter(|&i| i != s).collect();
    let m = others.len();
    if m == 0 {
        return None;
    }
    let nv = m + 2 * k;
    let mut a = Matrix::zeros(k + 1, nv);
    let mut b = vec![0.0; k + 1];
    for j in 0..k {
        for (i, &o) in others.iter().enumerate() {
            a[(j, i)] = rows[o][j];
        }
        a[(j, m + j)] = 1.0;
        a[(j, m + k + j)] = -1.0;
        b[j] = rows[s][j];
    }
    for i in 0..m {
        a[(k, i)] = 1.0;
    }
    b[k] = 1.0;
    let mut c = vec![0.0; nv];
    for cj in c.iter_mut().skip(m) {
        *cj = 1.0;
    }
    let sol = lp_solve(&LpProblem { c, a_eq: a, b }, tol.lp).ok()?;
    if sol.status != LpStatus::Optimal || sol.objective > tol.lp {
        return None;
    }
    finish_certificate(rows, s, &others, &sol.x[..m], tol)
}

fn finish_certificate(rows: &[Vec<f64>], s: usize, others: &[usize], x: &[f64], tol: &Tolerances) -> Option<ConvexCertificate> {
    let mut coefficients = vec![0.0; rows.len()];
    let total: f64 = x.iter().sum();
    if total <= 0.0 {
        return None;
    }
    for (i, &o) in others.iter().enumerate() {
        coefficients[o] = x[i] / total;
    }
    let mut cert = ConvexCertificate {
        state: s,
        coefficients,
        residual: 0.0,
    };
    cert.residual = certificate_residual(rows, &cert).ok()?;
    (cert.residual <= tol.lp).then_some(cert)
}

/// Finite table (u,v) ↦ f(u,v) for |u| = |v| ≤ depth, stored over the pair alphabet X×Y.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactionTable {
    nx: usize,
    ny: usize,
    table: WordTable,
}

impl ReactionTable {
    /// `values` in shortlex order of pair words, pair (x,y) numbered x·|Y|+y.
    pub fn new(nx: usize, ny: usize, depth: usize, values: Vec<f64>) -> Result<Self> {
        Ok(ReactionTable {
            nx,
            ny,
            table: WordTable::new(nx * ny, depth, values)?,
        })
    }

    pub fn depth(&self) -> usize {
        self.table.depth
    }

    pub fn input_count(&self) -> usize {
        self.nx
    }

    pub fn output_count(&self) -> usize {
        self.ny
    }

    pub fn values(&self) -> &[f64] {
        &self.table.values
    }

    fn pair_word(&self, u: &[usize], v: &[usize]) -> Result<Word> {
        if u.len() != v.len() {
            return Err(Error::Dimension("input and output words differ in length".into()));
        }
        if u.iter().any(|&x| x >= self.nx) || v.iter().any(|&y| y >= self.ny) {
            return Err(Error::UnknownSymbol("symbol index out of range".into()));
        }
        Ok(u.iter().zip(v).map(|(&x, &y)| x * self.ny + y).collect())
    }

    pub fn value(&self, u: &[usize], v: &[usize]) -> Result<f64> {
        if u.len() != v.len() {
            return Ok(0.0);
        }
        let w = self.pair_word(u, v)?;
        self.table.get(&w).ok_or(Error::Depth {
            have: self.depth(),
            need: w.len(),
        })
    }

    /// f_{u,v}(u′,v′) = f(uu′,vv′)/f(u,v)
    pub fn residual(&self, u: &[usize], v: &[usize], tol: &Tolerances) -> Result<ReactionTable> {
        let w = self.pair_word(u, v)?;
        Ok(ReactionTable {
            nx: self.nx,
            ny: self.ny,
            table: self.table.residual(&w, tol.zero)?,
        })
    }

    /// f(ε,ε) = 1, values in [0,1] and f(u,v) = Σ_{x,y} f(ux,vy).
    pub fn is_probabilistic_response(&self, tol: &Tolerances) -> bool {
        (self.table.values[0] - 1.0).abs() <= tol.sum
            && self.table.values.iter().all(|&v| v >= -tol.nonneg && v <= 1.0 + tol.sum)
            && self.input_additive(tol.sum)
    }

    fn input_additive(&self, tol: f64) -> bool {
        // for each x the sum over y of f(ux, vy) must equal f(u,v)
        let t = &self.table;
        if t.depth == 0 {
            return true;
        }
        crate::words::words_up_to(t.m, t.depth - 1).iter().all(|w| {
            (0..self.nx).all(|x| {
                let s: f64 = (0..self.ny)
                    .map(|y| {
                        let mut wx = w.clone();
                        wx.push(x * self.ny + y);
                        t.at(&wx)
                    })
                    .sum();
                (s - t.at(w)).abs() <= tol
            })
        })
    }

    pub fn agrees(&self, other: &ReactionTable, tol: f64) -> bool {
        self.nx == other.nx && self.ny == other.ny && self.table.agrees(&other.table, self.depth().min(other.depth()), tol)
    }

    /// A_f over the residual set when it closes within the table depth.
    pub fn residual_automaton(&self, inputs: &Alphabet, outputs: &Alphabet, tol: &Tolerances) -> Option<GeneralPA> {
        if inputs.len() != self.nx || outputs.len() != self.ny {
            return None;
        }
        let cl = residual_closure(&self.table, tol.zero, tol.sum)?;
        let n = cl.states.len();
        let mut trans = vec![Matrix::zeros(n, n); self.nx * self.ny];
        for &(g, l, h, p) in &cl.edges {
            trans[l][(g, h)] += p;
        }
        let mut initial = vec![0.0; n];
        initial[0] = 1.0;
        GeneralPA::new(inputs.clone(), outputs.clone(), trans, initial, tol).ok()
    }
}

/// Shift-stable family f_1..f_n with f_i(xu,yv) = Σ_j a_ij^{xy} f_j(u,v).
#[derive(Debug, Clone)]
pub struct ConeSpec {
    pub inputs: Alphabet,
    pub outputs: Alphabet,
    pub functions: Vec<ReactionTable>,
    pub initial: Vec<f64>,
    /// a^{xy} at index x·|Y|+y
    pub shift: Vec<Matrix>,
}

pub fn pa_from_cone(c: &ConeSpec, tol: &Tolerances) -> Result<GeneralPA> {
    let n = c.functions.len();
    if c.initial.len() != n {
        return Err(Error::Dimension("one initial coefficient per function".into()));
    }
    let pa = GeneralPA::new(c.inputs.clone(), c.outputs.clone(), c.shift.clone(), c.initial.clone(), tol)?;
    let ny = c.outputs.len();
    for (i, f) in c.functions.iter().enumerate() {
        if f.nx != c.inputs.len() || f.ny != ny {
            return Err(Error::AlphabetMismatch);
        }
        let d = f.depth();
        if d == 0 {
            continue;
        }
        for l in 0..pa.letter_count() {
            for w in crate::words::words_up_to(f.table.m, d - 1) {
                let lhs = f.table.at(&concat(&[l], &w));
                let rhs: f64 = (0..n)
                    .map(|j| {
                        let a = c.shift[l][(i, j)];
                        if a == 0.0 {
                            0.0
                        } else {
                            c.functions[j].table.get(&w).unwrap_or(f64::NAN) * a
                        }
                    })
                    .sum();
                if (lhs - rhs).abs() > tol.sum || rhs.is_nan() {
                    return Err(Error::Invalid(format!("function {} is not shift-stable under pair {}", i, l)));
                }
            }
        }
    }
    Ok(pa)
}

/// Value of the mixture Σ a_i f_i(u,v).
pub fn cone_value(c: &ConeSpec, u: &[usize], v: &[usize]) -> Result<f64> {
    let mut s = 0.0;
    for (a, f) in c.initial.iter().zip(&c.functions) {
        s += a * f.value(u, v)?;
    }
    Ok(s)
}
