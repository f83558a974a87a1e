use super::Dfa;
use crate::error::{Error, Result};
use crate::linalg::{dot, Tolerances};
use crate::moore_pa::MoorePA;
use crate::words::{concat, words_up_to, Word};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub enum IsolationStatus {
    /// |f(u) − a| ≤ δ at this string.
    Refuted(Word),
    /// No violation among strings of length ≤ L.
    ClearUpTo(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolationReport {
    pub status: IsolationStatus,
    pub delta: f64,
    pub max_len: usize,
    /// min |f(u) − a| over the scanned strings
    pub min_gap: f64,
}

/// Exhaustive shortlex scan of |u| ≤ max_len for a string within δ of the cut-point.
pub fn isolation_scan(a: &MoorePA, cut: f64, delta: f64, max_len: usize, tol: &Tolerances) -> Result<IsolationReport> {
    if !(delta > 0.0) {
        return Err(Error::Invalid(format!("δ must be positive, got {}", delta)));
    }
    let f = a.reactions_up_to(max_len);
    let mut min_gap = f64::INFINITY;
    for (u, v) in words_up_to(a.inputs().len(), max_len).into_iter().zip(f) {
        let gap = (v - cut).abs();
        min_gap = min_gap.min(gap);
        if gap <= delta - tol.zero {
            return Ok(IsolationReport {
                status: IsolationStatus::Refuted(u),
                delta,
                max_len,
                min_gap,
            });
        }
    }
    Ok(IsolationReport {
        status: IsolationStatus::ClearUpTo(max_len),
        delta,
        max_len,
        min_gap,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DfaExtraction {
    /// Minimized automaton.
    pub dfa: Dfa,
    pub raw_states: usize,
    /// (1 + 1/δ)^{n−1}
    pub bound: f64,
    /// Shortest string reaching each raw state.
    pub access: Vec<Word>,
}

const STATE_CAP: usize = 200_000;

/// Breadth-first exploration of ξ⁰A^u, merging into the first representative within
/// 2δ/(n²·max(1,|λ|)) in the max norm. The result is only correct when a is δ-isolated;
/// that is not checked here.
pub fn extract_dfa(a: &MoorePA, cut: f64, delta: f64) -> Result<DfaExtraction> {
    if !(delta > 0.0) {
        return Err(Error::Invalid(format!("δ must be positive, got {}", delta)));
    }
    let n = a.n();
    let m = a.inputs().len();
    let lam = a.lambda().iter().fold(0.0f64, |x, v| x.max(v.abs()));
    let radius = 2.0 * delta / ((n * n) as f64 * lam.max(1.0));
    let mut reps: Vec<Vec<f64>> = vec![a.initial().to_vec()];
    let mut access: Vec<Word> = vec![Vec::new()];
    let mut delta_table: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(m);
        for x in 0..m {
            let v = a.trans(x).vec_mul(&reps[s]);
            let hit = reps.iter().position(|r| r.iter().zip(&v).all(|(p, q)| (p - q).abs() <= radius));
            let t = match hit {
                Some(t) => t,
                None => {
                    if reps.len() >= STATE_CAP {
                        return Err(Error::Invalid(format!(
                            "more than {} states; isolation assumption likely false",
                            STATE_CAP
                        )));
                    }
                    reps.push(v);
                    access.push(concat(&access[s], &[x]));
                    queue.push_back(reps.len() - 1);
                    reps.len() - 1
                }
            };
            row.push(t);
        }
        delta_table.push(row);
    }
    let accepting = reps.iter().map(|r| dot(r, a.lambda()) > cut).collect();
    let raw = Dfa::new(a.inputs().clone(), 0, delta_table, accepting)?;
    Ok(DfaExtraction {
        dfa: raw.minimize(),
        raw_states: reps.len(),
        bound: (1.0 + 1.0 / delta).powi(n as i32 - 1),
        access,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::tests::cantor;
    use crate::languages::{enumerate, member};
    use crate::moore_pa::dfa_to_pa;
    use crate::words::Alphabet;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn cantor_scans() {
        let c = cantor();
        let r = isolation_scan(&c, 0.5, 1.0 / 6.0, 8, &t()).unwrap();
        assert_eq!(r.status, IsolationStatus::ClearUpTo(8));
        assert!((r.min_gap - 1.0 / 6.0).abs() < 1e-12);
        let r = isolation_scan(&c, 2.0 / 3.0, 0.01, 8, &t()).unwrap();
        assert_eq!(r.status, IsolationStatus::Refuted(vec![1]));
        assert!(isolation_scan(&c, 0.5, 0.0, 3, &t()).is_err());
    }

    #[test]
    fn cantor_dfa() {
        let c = cantor();
        let e = extract_dfa(&c, 0.5, 1.0 / 6.0).unwrap();
        assert_eq!(e.dfa.n(), 2);
        assert!(e.dfa.n() as f64 <= e.bound);
        assert_eq!(e.bound, 7.0);
        for u in words_up_to(2, 8) {
            assert_eq!(e.dfa.accepts(&u), member(&c, 0.5, &u).unwrap());
            assert_eq!(e.dfa.accepts(&u), u.last() == Some(&1));
        }
    }

    #[test]
    fn dfa_round_trip() {
        let d = Dfa::new(
            Alphabet::new(["a", "b"]).unwrap(),
            0,
            vec![vec![1, 0], vec![2, 0], vec![2, 2], vec![3, 3]],
            vec![false, false, true, true],
        )
        .unwrap();
        let pa = dfa_to_pa(&d);
        let e = extract_dfa(&pa, 0.0, 0.5).unwrap();
        assert!(e.dfa.agrees_up_to(&d, 6));
        assert_eq!(e.dfa, d.minimize());
        assert_eq!(enumerate(&pa, 0.0, 6), d.language(6));
    }

    #[test]
    fn small_delta_terminates() {
        let e = extract_dfa(&cantor(), 0.5, 0.01).unwrap();
        assert!(e.raw_states > 2);
        assert!(e.dfa.n() <= e.raw_states);
    }
}
