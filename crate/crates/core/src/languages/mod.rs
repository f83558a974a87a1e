//! Cut-point languages of Moore automata: membership, cut-point constructions,
//! isolation scans, DFA extraction, definiteness, ergodicity and stability.

mod dfa;
mod ergodic;
mod isolation;

pub use dfa::Dfa;
pub use ergodic::{contraction_bound, definite_rep, ergodic_test, stability_check, Contraction, DefiniteRep, ErgodicReport, Stability};
pub use isolation::{extract_dfa, isolation_scan, DfaExtraction, IsolationReport, IsolationStatus};

use crate::error::{Error, Result};
use crate::general_pa::GeneralPA;
use crate::linalg::{Matrix, Tolerances};
use crate::moore_pa::MoorePA;
use crate::words::{words_up_to, Word};

/// A_a = {u | f_A(u) > a}
#[derive(Debug, Clone, PartialEq)]
pub struct CutLanguage {
    automaton: MoorePA,
    cutpoint: f64,
}

impl CutLanguage {
    pub fn new(automaton: MoorePA, cutpoint: f64) -> Result<Self> {
        check_cut(cutpoint)?;
        Ok(CutLanguage { automaton, cutpoint })
    }

    pub fn automaton(&self) -> &MoorePA {
        &self.automaton
    }

    pub fn cutpoint(&self) -> f64 {
        self.cutpoint
    }

    pub fn member(&self, u: &[usize]) -> Result<bool> {
        member(&self.automaton, self.cutpoint, u)
    }

    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        enumerate(&self.automaton, self.cutpoint, max_len)
    }
}

fn check_cut(a: f64) -> Result<()> {
    if (0.0..1.0).contains(&a) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("cut-point {} outside [0,1)", a)))
    }
}

pub fn member(a: &MoorePA, cut: f64, u: &[usize]) -> Result<bool> {
    Ok(a.avg_reaction(u)? > cut)
}

/// Members of length ≤ max_len in shortlex order.
pub fn enumerate(a: &MoorePA, cut: f64, max_len: usize) -> Vec<Word> {
    let f = a.reactions_up_to(max_len);
    words_up_to(a.inputs().len(), max_len)
        .into_iter()
        .zip(f)
        .filter(|(_, v)| *v > cut)
        .map(|(u, _)| u)
        .collect()
}

/// Same reactions with the point initial distribution e₁: state 0 carries row (0, ξ⁰A^x).
pub fn fold_initial(a: &MoorePA) -> MoorePA {
    let n = a.n();
    let trans = (0..a.inputs().len())
        .map(|x| {
            let mut t = Matrix::zeros(n + 1, n + 1);
            let first = a.trans(x).vec_mul(a.initial());
            for (j, v) in first.into_iter().enumerate() {
                t[(0, j + 1)] = v;
            }
            t.set_block(1, 1, a.trans(x));
            t
        })
        .collect();
    let mut initial = vec![0.0; n + 1];
    initial[0] = 1.0;
    let f0: f64 = a.initial().iter().zip(a.lambda()).map(|(p, l)| p * l).sum();
    let lambda = std::iter::once(f0).chain(a.lambda().iter().copied()).collect();
    MoorePA::new_unchecked(a.inputs().clone(), trans, initial, lambda)
}

/// 2n states with 0/1 output; each entry A_ij becomes [[λ_j A_ij, (1−λ_j)A_ij]; same row],
/// and each initial weight p_i is split into (λ_i p_i, (1−λ_i)p_i).
pub fn binarize_output(a: &MoorePA, tol: &Tolerances) -> Result<MoorePA> {
    if let Some(v) = a.lambda().iter().find(|&&v| v < -tol.nonneg || v > 1.0 + tol.nonneg) {
        return Err(Error::Invalid(format!("output {} outside [0,1]", v)));
    }
    let n = a.n();
    let lam: Vec<f64> = a.lambda().iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let trans = (0..a.inputs().len())
        .map(|x| {
            let m = a.trans(x);
            Matrix::from_fn(2 * n, 2 * n, |r, c| {
                let (i, j) = (r / 2, c / 2);
                if c % 2 == 0 {
                    lam[j] * m[(i, j)]
                } else {
                    (1.0 - lam[j]) * m[(i, j)]
                }
            })
        })
        .collect();
    let initial = a.initial().iter().zip(&lam).flat_map(|(&p, &l)| [l * p, (1.0 - l) * p]).collect();
    let lambda = (0..2 * n).map(|s| if s % 2 == 0 { 1.0 } else { 0.0 }).collect();
    Ok(MoorePA::new_unchecked(a.inputs().clone(), trans, initial, lambda))
}

/// B with A_a = B_b. For b < a the reactions are scaled by b/a; for b > a they are mixed with an
/// absorbing accepting state, f_B = α + (1−α)f_A with α = (b−a)/(1−a).
pub fn shift_cutpoint(a: &MoorePA, from: f64, to: f64) -> Result<MoorePA> {
    check_cut(from)?;
    check_cut(to)?;
    let n = a.n();
    let m = a.inputs().len();
    if to == from {
        return Ok(a.clone());
    }
    if to < from {
        let alpha = to / from;
        let trans = (0..m)
            .map(|x| {
                let mut t = Matrix::zeros(2 * n, 2 * n);
                let (p, q) = (a.trans(x).scale(alpha), a.trans(x).scale(1.0 - alpha));
                t.set_block(0, 0, &p);
                t.set_block(0, n, &q);
                t.set_block(n, 0, &p);
                t.set_block(n, n, &q);
                t
            })
            .collect();
        let initial = a
            .initial()
            .iter()
            .map(|p| alpha * p)
            .chain(a.initial().iter().map(|p| (1.0 - alpha) * p))
            .collect();
        let lambda = a.lambda().iter().copied().chain(std::iter::repeat_n(0.0, n)).collect();
        return Ok(MoorePA::new_unchecked(a.inputs().clone(), trans, initial, lambda));
    }
    let alpha = (to - from) / (1.0 - from);
    let trans = (0..m)
        .map(|x| {
            let mut t = Matrix::zeros(n + 1, n + 1);
            t[(0, 0)] = 1.0;
            t.set_block(1, 1, a.trans(x));
            t
        })
        .collect();
    let initial = std::iter::once(alpha)
        .chain(a.initial().iter().map(|p| (1.0 - alpha) * p))
        .collect();
    let lambda = std::iter::once(1.0).chain(a.lambda().iter().copied()).collect();
    Ok(MoorePA::new_unchecked(a.inputs().clone(), trans, initial, lambda))
}

/// B with f_B(ux) = ξ⁰A^uA^{xy}I, so A_{y,a} = B_a ∖ {ε}.
pub fn general_language_pa(a: &GeneralPA, y: usize) -> Result<MoorePA> {
    let ny = a.outputs().len();
    if y >= ny {
        return Err(Error::UnknownSymbol(format!("output #{}", y)));
    }
    let n = a.n();
    let trans = (0..a.inputs().len())
        .map(|x| {
            let hit = a.trans(x, y);
            let miss = (0..ny)
                .filter(|&z| z != y)
                .fold(Matrix::zeros(n, n), |acc, z| acc.add(a.trans(x, z)));
            let mut t = Matrix::zeros(2 * n, 2 * n);
            t.set_block(0, 0, &miss);
            t.set_block(0, n, hit);
            t.set_block(n, 0, &miss);
            t.set_block(n, n, hit);
            t
        })
        .collect();
    let initial = a.initial().iter().copied().chain(std::iter::repeat_n(0.0, n)).collect();
    let lambda = std::iter::repeat_n(0.0, n).chain(std::iter::repeat_n(1.0, n)).collect();
    Ok(MoorePA::new_unchecked(a.inputs().clone(), trans, initial, lambda))
}
