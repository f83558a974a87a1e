use super::{LinearAutomaton, StringFunction};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Tolerances};
use crate::words::{concat, words_up_to, Word};

/// Row tags U, column tags V, core (U,V)^f and letter blocks (U,V)^{f,x}.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelBasis {
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    pub core: Matrix,
    pub letters: Vec<Matrix>,
}

impl HankelBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// (U,V)^{f,w}
    pub fn block(&self, f: &dyn StringFunction, w: &[usize]) -> Result<Matrix> {
        tagged_block(f, &self.rows, w, &self.cols)
    }
}

fn tagged_block(f: &dyn StringFunction, rows: &[Word], mid: &[usize], cols: &[Word]) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for u in rows {
        let um = concat(u, mid);
        for v in cols {
            data.push(f.eval(&concat(&um, v))?);
        }
    }
    Matrix::from_vec(rows.len(), cols.len(), data)
}

fn need_len(f: &dyn StringFunction, need: usize) -> Result<()> {
    match f.max_len() {
        Some(have) if have < need => Err(Error::Depth { have, need }),
        _ => Ok(()),
    }
}

/// H_{u,v} = f(uv) for |u| ≤ row_len, |v| ≤ col_len, shortlex tags.
pub fn hankel_block(f: &dyn StringFunction, row_len: usize, col_len: usize) -> Result<Matrix> {
    need_len(f, row_len + col_len)?;
    let m = f.alphabet().len();
    tagged_block(f, &words_up_to(m, row_len), &[], &words_up_to(m, col_len))
}

/// Greedy shortlex selection of independent rows and columns.
/// Errors with `RankBound` when the evidence block has rank above `rank_bound`.
pub fn hankel_basis(f: &dyn StringFunction, rank_bound: usize, tol: &Tolerances) -> Result<HankelBasis> {
    need_len(f, 2 * rank_bound)?;
    let m = f.alphabet().len();
    let tags = words_up_to(m, rank_bound);
    let h = tagged_block(f, &tags, &[], &tags)?;
    let peak = h.norm_abs();
    let h = if peak > 0.0 { h.scale(1.0 / peak) } else { h };
    let r = h.rank(tol.rank);
    if r > rank_bound {
        return Err(Error::RankBound(rank_bound));
    }
    let empty = HankelBasis {
        rows: vec![],
        cols: vec![],
        core: Matrix::zeros(0, 0),
        letters: vec![Matrix::zeros(0, 0); m],
    };
    if r == 0 {
        return Ok(empty);
    }
    let short: Vec<usize> = (0..tags.len()).filter(|&i| tags[i].len() < r).collect();
    let mut space = Subspace::new(tags.len(), tol.rank);
    let mut rows = Vec::new();
    for &i in &short {
        if space.try_add(h.row(i))? {
            rows.push(i);
        }
    }
    let mut cspace = Subspace::new(rows.len(), tol.rank);
    let mut cols = Vec::new();
    for &j in &short {
        let c: Vec<f64> = rows.iter().map(|&i| h[(i, j)]).collect();
        if cspace.try_add(&c)? {
            cols.push(j);
        }
    }
    if rows.len() != r || cols.len() != r {
        return Err(Error::RankBound(rank_bound));
    }
    let rows: Vec<Word> = rows.into_iter().map(|i| tags[i].clone()).collect();
    let cols: Vec<Word> = cols.into_iter().map(|j| tags[j].clone()).collect();
    let core = tagged_block(f, &rows, &[], &cols)?;
    let cond = core.condition()?;
    if !(cond < 1.0 / tol.rank) {
        return Err(Error::Singular);
    }
    let letters = (0..m).map(|x| tagged_block(f, &rows, &[x], &cols)).collect::<Result<Vec<_>>>()?;
    Ok(HankelBasis { rows, cols, core, letters })
}

/// (e₁, {(U,V)^{f,x}((U,V)^f)⁻¹}, (U,V)^f e₁↓); the zero function gives the dimension-1 zero automaton.
pub fn realize(f: &dyn StringFunction, rank_bound: usize, tol: &Tolerances) -> Result<LinearAutomaton> {
    let b = hankel_basis(f, rank_bound, tol)?;
    let r = b.rank();
    if r == 0 {
        return Ok(LinearAutomaton::zero(f.alphabet().clone()));
    }
    let inv = b.core.inverse()?;
    let mut initial = vec![0.0; r];
    initial[0] = 1.0;
    LinearAutomaton::new(
        f.alphabet().clone(),
        initial,
        b.letters.iter().map(|l| l.mul(&inv)).collect(),
        b.core.col(0),
    )
}

/// Rank of the Hankel block, scaled to unit peak, over rows |u| ≤ ⌊depth/2⌋ and columns |v| ≤ ⌈depth/2⌉.
pub fn e_f_dimension(f: &dyn StringFunction, depth: usize, tol: &Tolerances) -> Result<usize> {
    let h = hankel_block(f, depth / 2, depth - depth / 2)?;
    let peak = h.norm_abs();
    Ok(if peak > 0.0 { h.scale(1.0 / peak).rank(tol.rank) } else { 0 })
}

fn stabilization(start: &[f64], step: impl Fn(&[f64], usize) -> Vec<f64>, m: usize, tol: &Tolerances) -> usize {
    let mut space = Subspace::new(start.len(), tol.rank);
    let mut frontier = Vec::new();
    if space.try_add(start).expect("dimension matches") {
        frontier.push(start.to_vec());
    }
    let mut k = 0;
    loop {
        let mut grown = Vec::new();
        for v in &frontier {
            for x in 0..m {
                let w = step(v, x);
                if space.try_add(&w).expect("dimension matches") {
                    grown.push(w);
                }
            }
        }
        if grown.is_empty() {
            return k;
        }
        k += 1;
        frontier = grown;
    }
}

/// First k with V_{k+1} = V_k, where V_0 = ⟨ξ⁰⟩ and V_{k+1} = V_k + Σ_x V_k L^x.
pub fn reach_degree(l: &LinearAutomaton, tol: &Tolerances) -> usize {
    stabilization(l.initial(), |v, x| l.trans(x).vec_mul(v), l.inputs().len(), tol)
}

/// Same with columns: W_0 = ⟨λ⟩, W_{k+1} = W_k + Σ_x L^x W_k.
pub fn disting_degree(l: &LinearAutomaton, tol: &Tolerances) -> usize {
    stabilization(l.lambda(), |v, x| l.trans(x).mul_vec(v), l.inputs().len(), tol)
}
