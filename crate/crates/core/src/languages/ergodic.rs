use crate::error::{Error, Result};
use crate::linalg::{BoolPattern, Matrix, Tolerances};
use crate::moore_pa::MoorePA;
use crate::words::{count_up_to, shortlex_index, words_of_len, Word};
use std::collections::{HashSet, VecDeque};

#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicReport {
    pub ergodic: bool,
    /// Word whose matrix pattern is not primitive.
    pub witness: Option<Word>,
    /// Size of the pattern semigroup generated by the letters.
    pub patterns: usize,
}

/// Every nonempty word must have a primitive zero pattern; checked over the finite
/// semigroup of boolean patterns, breadth-first from the letters.
pub fn ergodic_test(a: &MoorePA, tol: &Tolerances) -> ErgodicReport {
    let m = a.inputs().len();
    let letters: Vec<BoolPattern> = (0..m).map(|x| BoolPattern::of(a.trans(x), tol.zero)).collect();
    let mut seen: HashSet<BoolPattern> = HashSet::new();
    let mut queue: VecDeque<(BoolPattern, Word)> = VecDeque::new();
    for (x, p) in letters.iter().enumerate() {
        if seen.insert(p.clone()) {
            queue.push_back((p.clone(), vec![x]));
        }
    }
    while let Some((p, w)) = queue.pop_front() {
        if !p.is_primitive().expect("square pattern") {
            return ErgodicReport {
                ergodic: false,
                witness: Some(w),
                patterns: seen.len(),
            };
        }
        for (x, q) in letters.iter().enumerate() {
            let r = p.mul(q).expect("same size");
            if seen.insert(r.clone()) {
                let mut wx = w.clone();
                wx.push(x);
                queue.push_back((r, wx));
            }
        }
    }
    ErgodicReport {
        ergodic: true,
        witness: None,
        patterns: seen.len(),
    }
}

/// c = min entry over all A^x, with ‖A^u‖ ≤ (1−2c)^{|u|−1} checked on 1 ≤ |u| ≤ checked_len.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction {
    pub c: f64,
    pub holds: bool,
    pub checked_len: usize,
    /// max over scanned u of ‖A^u‖ / bound(|u|)
    pub worst_ratio: f64,
}

impl Contraction {
    pub fn rate(&self) -> f64 {
        (1.0 - 2.0 * self.c).max(0.0)
    }

    pub fn bound(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.rate().powi(k as i32 - 1)
        }
    }
}

fn layer_matrices(a: &MoorePA, len: usize) -> Vec<(Word, Matrix)> {
    words_of_len(a.inputs().len(), len)
        .into_iter()
        .map(|u| {
            let m = a.word_matrix(&u).expect("valid word");
            (u, m)
        })
        .collect()
}

pub fn contraction_bound(a: &MoorePA, tol: &Tolerances) -> Contraction {
    const CHECK: usize = 5;
    let c = (0..a.inputs().len())
        .map(|x| a.trans(x).min_entry())
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    let mut out = Contraction {
        c,
        holds: true,
        checked_len: CHECK,
        worst_ratio: 0.0,
    };
    for k in 1..=CHECK {
        let b = out.bound(k);
        for (_, m) in layer_matrices(a, k) {
            let norm = m.norm_spread();
            if norm > b + tol.sum {
                out.holds = false;
            }
            let ratio = if b > 0.0 {
                norm / b
            } else if norm <= tol.sum {
                0.0
            } else {
                f64::INFINITY
            };
            out.worst_ratio = out.worst_ratio.max(ratio);
        }
    }
    out
}

/// Membership of |u| ≥ k is decided by the last k letters.
#[derive(Debug, Clone, PartialEq)]
pub struct DefiniteRep {
    pub k: usize,
    alphabet_len: usize,
    /// X^k in shortlex order
    pub suffix: Vec<bool>,
    /// X^{<k} in shortlex order
    pub short: Vec<bool>,
}

impl DefiniteRep {
    pub fn member(&self, u: &[usize]) -> bool {
        let m = self.alphabet_len;
        if u.len() < self.k {
            self.short[shortlex_index(m, u)]
        } else {
            let s = &u[u.len() - self.k..];
            self.suffix[shortlex_index(m, s) - count_up_to(m, self.k - 1)]
        }
    }
}

fn words_len(m: usize, k: usize) -> usize {
    count_up_to(m, k) - if k == 0 { 0 } else { count_up_to(m, k - 1) }
}

/// Suffix length from (1−2c)^{k−1} < 2δ/(n|λ|) when every A^x is positive, or from the
/// scanned decay max_{|u|=l}‖A^u‖ < 1 when the automaton is ergodic. `None` when neither holds.
/// The table is validated on every |u| ∈ [k, k+2]; a mismatch means a was not δ-isolated.
pub fn definite_rep(a: &MoorePA, cut: f64, delta: f64, tol: &Tolerances) -> Result<Option<DefiniteRep>> {
    if !(delta > 0.0) {
        return Err(Error::Invalid(format!("δ must be positive, got {}", delta)));
    }
    let n = a.n();
    let m = a.inputs().len();
    let lam = a.lambda().iter().fold(0.0f64, |x, v| x.max(v.abs()));
    let constant = a.lambda().iter().all(|&v| (v - a.lambda()[0]).abs() <= tol.zero);
    let threshold = 2.0 * delta / (n as f64 * lam);
    let k = if n == 1 || constant {
        1
    } else if (0..m).all(|x| a.trans(x).min_entry() > tol.zero) {
        let c = (0..m).map(|x| a.trans(x).min_entry()).fold(f64::INFINITY, f64::min);
        let rate = (1.0 - 2.0 * c).max(0.0);
        let mut k = 1;
        while rate.powi(k as i32 - 1) >= threshold {
            k += 1;
        }
        k
    } else if ergodic_test(a, tol).ergodic {
        let Some((l, rho)) = (1..=n * n).find_map(|l| {
            if words_len(m, l) > 1 << 16 {
                return None;
            }
            let rho = layer_matrices(a, l).iter().map(|(_, mm)| mm.norm_spread()).fold(0.0, f64::max);
            (rho < 1.0 - tol.zero).then_some((l, rho))
        }) else {
            return Ok(None);
        };
        let mut k = 1;
        while rho.powi((k / l) as i32) >= threshold {
            k += 1;
        }
        k
    } else {
        return Ok(None);
    };
    let f = a.reactions_up_to(k);
    let start = count_up_to(m, k - 1);
    let suffix = f[start..].iter().map(|&v| v > cut).collect();
    let short = f[..start].iter().map(|&v| v > cut).collect();
    let rep = DefiniteRep {
        k,
        alphabet_len: m,
        suffix,
        short,
    };
    for len in k..=k + 2 {
        for u in words_of_len(m, len) {
            if (a.avg_reaction(&u)? > cut) != rep.member(&u) {
                return Err(Error::Isolation(a.inputs().display_word(&u)));
            }
        }
    }
    Ok(Some(rep))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    StableAll,
    /// Every word of this length has a positive matrix.
    PositiveWordStable(usize),
    Unknown,
}

/// Positive letters first, then the smallest positive word layer l ≤ n², then max‖A^x‖ < 1.
pub fn stability_check(a: &MoorePA, tol: &Tolerances) -> Stability {
    let n = a.n();
    let m = a.inputs().len();
    let letters: Vec<BoolPattern> = (0..m).map(|x| BoolPattern::of(a.trans(x), tol.zero)).collect();
    if letters.iter().all(|p| p.all_ones()) {
        return Stability::StableAll;
    }
    let mut layer: HashSet<BoolPattern> = letters.iter().cloned().collect();
    for l in 2..=(n * n).max(2) {
        let mut next = HashSet::new();
        for p in &layer {
            for q in &letters {
                next.insert(p.mul(q).expect("same size"));
            }
        }
        layer = next;
        if layer.iter().all(|p| p.all_ones()) {
            return Stability::PositiveWordStable(l);
        }
    }
    let max_norm = (0..m).map(|x| a.trans(x).norm_spread()).fold(0.0, f64::max);
    if max_norm < 1.0 - tol.zero {
        return Stability::StableAll;
    }
    Stability::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::tests::cantor;
    use crate::words::{words_up_to, Alphabet};

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn one_letter(rows: &[Vec<f64>], initial: Vec<f64>, lambda: Vec<f64>) -> MoorePA {
        MoorePA::new(
            Alphabet::new(["x"]).unwrap(),
            vec![Matrix::from_rows(rows).unwrap()],
            initial,
            lambda,
            &t(),
        )
        .unwrap()
    }

    fn mixing() -> MoorePA {
        one_letter(&[vec![0.9, 0.1], vec![0.1, 0.9]], vec![1.0, 0.0], vec![1.0, 0.0])
    }

    #[test]
    fn ergodicity() {
        assert!(ergodic_test(&one_letter(&[vec![0.5, 0.5], vec![0.5, 0.5]], vec![1.0, 0.0], vec![1.0, 0.0]), &t()).ergodic);
        let id = ergodic_test(&one_letter(&[vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 0.0], vec![1.0, 0.0]), &t());
        assert!(!id.ergodic);
        assert_eq!(id.witness, Some(vec![0]));
        assert!(!ergodic_test(&cantor(), &t()).ergodic);
    }

    #[test]
    fn contraction() {
        let c = contraction_bound(&mixing(), &t());
        assert!((c.c - 0.1).abs() < 1e-15);
        assert!(c.holds);
        assert!((mixing().word_matrix(&[0, 0]).unwrap().norm_spread() - 0.64).abs() < 1e-12);
        assert!((c.bound(2) - 0.8).abs() < 1e-12);
        let z = contraction_bound(&cantor(), &t());
        assert_eq!(z.c, 0.0);
        assert_eq!(z.bound(4), 1.0);
        assert!(z.holds);
    }

    #[test]
    fn definiteness() {
        let r = definite_rep(&mixing(), 0.4, 0.1, &t()).unwrap().unwrap();
        assert_eq!(r.k, 12);
        assert!(r.suffix.iter().all(|&b| b));
        let constant = one_letter(&[vec![1.0]], vec![1.0], vec![0.3]);
        assert_eq!(definite_rep(&constant, 0.2, 0.05, &t()).unwrap().unwrap().k, 1);
        assert_eq!(definite_rep(&cantor(), 0.5, 1.0 / 6.0, &t()).unwrap(), None);
    }

    #[test]
    fn ergodic_definiteness() {
        // zero pattern at (0,0) but A^{xx} positive
        let a = MoorePA::new(
            Alphabet::new(["x", "y"]).unwrap(),
            vec![
                Matrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap(),
                Matrix::from_rows(&[vec![0.6, 0.4], vec![0.3, 0.7]]).unwrap(),
            ],
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            &t(),
        )
        .unwrap();
        let gaps: Vec<f64> = a.reactions_up_to(8).iter().map(|v| (v - 0.75).abs()).collect();
        let delta = gaps.iter().cloned().fold(f64::INFINITY, f64::min) * 0.99;
        match definite_rep(&a, 0.75, delta, &t()) {
            Ok(Some(r)) => {
                for u in words_up_to(2, r.k + 2) {
                    assert_eq!(r.member(&u), a.avg_reaction(&u).unwrap() > 0.75);
                }
            }
            Err(Error::Isolation(_)) => {}
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn stability() {
        assert_eq!(stability_check(&mixing(), &t()), Stability::StableAll);
        let id = one_letter(&[vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(stability_check(&id, &t()), Stability::Unknown);
        let sq = one_letter(&[vec![0.0, 1.0], vec![0.5, 0.5]], vec![1.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(stability_check(&sq, &t()), Stability::PositiveWordStable(2));
    }
}
