use super::LinearAutomaton;
use crate::error::{Error, Result};
use crate::languages::Dfa;
use crate::linalg::{dot, Matrix, Tolerances};
use crate::moore_pa::MoorePA;
use crate::words::words_up_to;

/// Invertible P with first column v and remaining columns an orthonormal basis of v^⊥.
fn completion(v: &[f64]) -> Matrix {
    let n = v.len();
    let vn = dot(v, v).sqrt();
    let mut basis: Vec<Vec<f64>> = vec![v.iter().map(|x| x / vn).collect()];
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wk, bk) in w.iter_mut().zip(b) {
                    *wk -= c * bk;
                }
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > 1e-8 {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    Matrix::from_fn(n, n, |i, j| if j == 0 { v[i] } else { basis[j][i] })
}

/// Probabilistic automaton A of n+2 states with f_A(u) = a^{|u|+1} f_L(u) + 1/(n+2); returns (A, a).
pub fn la_to_pa_affine(l: &LinearAutomaton, tol: &Tolerances) -> Result<(MoorePA, f64)> {
    let n = l.dim();
    let size = n + 2;
    let share = 1.0 / size as f64;
    let m = l.inputs().len();
    if l.lambda().iter().all(|&v| v.abs() <= tol.zero) {
        let mut initial = vec![0.0; size];
        initial[0] = 1.0;
        let mut lambda = vec![0.0; size];
        lambda[0] = share;
        let a = MoorePA::new(l.inputs().clone(), vec![Matrix::identity(size); m], initial, lambda, tol)?;
        return Ok((a, share));
    }
    let l2 = l.change_basis(&completion(l.lambda()))?;
    let mut xi1 = l2.initial().to_vec();
    xi1.push(-xi1.iter().sum::<f64>());
    xi1.push(0.0);
    let a1: Vec<Matrix> = l2
        .matrices()
        .iter()
        .map(|lx| {
            let mut t = Matrix::zeros(size, size);
            t.set_block(0, 0, lx);
            for i in 0..n {
                t[(i, n)] = -lx.row(i).iter().sum::<f64>();
                t[(n + 1, i)] = -(0..n).map(|r| lx[(r, i)]).sum::<f64>();
            }
            t[(n + 1, n)] = lx.data().iter().sum();
            t
        })
        .collect();
    let max = a1
        .iter()
        .map(|t| t.norm_abs())
        .chain(xi1.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    let a = share / (1.0 + max);
    let initial = xi1.iter().map(|v| a * v + share).collect();
    let trans = a1.iter().map(|t| t.map(|v| a * v + share)).collect();
    let mut lambda = vec![0.0; size];
    lambda[0] = 1.0;
    Ok((MoorePA::new(l.inputs().clone(), trans, initial, lambda, tol)?, a))
}

/// Automaton of n+4 states whose cut-point-1/(n+4) language is {u | f_L(u) > a}.
pub fn la_language_pa(l: &LinearAutomaton, a: f64, tol: &Tolerances) -> Result<MoorePA> {
    if !a.is_finite() {
        return Err(Error::Invalid("non-finite cut-point".into()));
    }
    let n = l.dim();
    // (ξ⁰, 1, 0), L^x ⊕ 1 ⊕ 0, (λ, −a, 0): value f_L − a in n+2 dimensions
    let mut initial = l.initial().to_vec();
    initial.extend([1.0, 0.0]);
    let trans = l
        .matrices()
        .iter()
        .map(|lx| {
            let mut t = Matrix::zeros(n + 2, n + 2);
            t.set_block(0, 0, lx);
            t[(n, n)] = 1.0;
            t
        })
        .collect();
    let mut lambda = l.lambda().to_vec();
    lambda.extend([-a, 0.0]);
    let shifted = LinearAutomaton::new(l.inputs().clone(), initial, trans, lambda)?;
    Ok(la_to_pa_affine(&shifted, tol)?.0)
}

/// Block-diagonal 0/1 automaton with f(u) = aᵢ when DFA i accepts u. The DFAs must partition
/// every string of length ≤ depth.
pub fn laf_from_level_dfas(levels: &[(f64, Dfa)], depth: usize) -> Result<LinearAutomaton> {
    let Some((_, first)) = levels.first() else {
        return Err(Error::Empty);
    };
    let alphabet = first.alphabet().clone();
    if levels.iter().any(|(_, d)| d.alphabet() != &alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    for u in words_up_to(alphabet.len(), depth) {
        let hits = levels.iter().filter(|(_, d)| d.accepts(&u)).count();
        if hits != 1 {
            let what = if hits == 0 { "no level" } else { "several levels" };
            return Err(Error::Invalid(format!("`{}` is accepted by {}", alphabet.display_word(&u), what)));
        }
    }
    let mut initial = Vec::new();
    let mut lambda = Vec::new();
    let mut blocks: Vec<Vec<Matrix>> = vec![Vec::new(); alphabet.len()];
    for (v, d) in levels {
        let k = d.n();
        initial.extend((0..k).map(|s| if s == d.start() { 1.0 } else { 0.0 }));
        lambda.extend((0..k).map(|s| if d.is_accepting(s) { *v } else { 0.0 }));
        for (x, b) in blocks.iter_mut().enumerate() {
            b.push(Matrix::from_fn(k, k, |s, t| if d.next(s, x) == t { 1.0 } else { 0.0 }));
        }
    }
    let trans = blocks.iter().map(|b| Matrix::block_diag(&b.iter().collect::<Vec<_>>())).collect();
    LinearAutomaton::new(alphabet, initial, trans, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn x() -> Alphabet {
        Alphabet::new(["x"]).unwrap()
    }

    #[test]
    fn affine_letter() {
        let l = LinearAutomaton::letter(x(), 0);
        let (pa, a) = la_to_pa_affine(&l, &t()).unwrap();
        assert_eq!(pa.n(), 4);
        assert!((pa.avg_reaction(&[]).unwrap() - 0.25).abs() < 1e-12);
        assert!((pa.avg_reaction(&[0]).unwrap() - (a * a + 0.25)).abs() < 1e-12);
        assert!(pa.initial().iter().all(|&v| v > 0.0));
        for u in words_up_to(1, 4) {
            let expect = a.powi(u.len() as i32 + 1) * l.reaction(&u).unwrap() + 0.25;
            assert!((pa.avg_reaction(&u).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn affine_zero() {
        let (pa, _) = la_to_pa_affine(&LinearAutomaton::zero(x()), &t()).unwrap();
        assert_eq!(pa.n(), 3);
        assert!(pa.reactions_up_to(4).iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn geometric_language() {
        let l = LinearAutomaton::new(x(), vec![1.0], vec![Matrix::from_rows(&[vec![0.5]]).unwrap()], vec![1.0]).unwrap();
        let pa = la_language_pa(&l, 0.3, &t()).unwrap();
        assert_eq!(pa.n(), 5);
        for k in 0..6 {
            let u = vec![0; k];
            assert_eq!(pa.avg_reaction(&u).unwrap() > 0.2, k <= 1);
        }
    }

    #[test]
    fn level_dfas() {
        let a = Alphabet::new(["0", "2"]).unwrap();
        let ends2 = Dfa::new(a.clone(), 0, vec![vec![0, 1], vec![0, 1]], vec![false, true]).unwrap();
        let other = Dfa::new(a.clone(), 0, vec![vec![0, 1], vec![0, 1]], vec![true, false]).unwrap();
        let l = laf_from_level_dfas(&[(1.0, ends2.clone()), (0.0, other)], 5).unwrap();
        for u in words_up_to(2, 5) {
            assert_eq!(l.reaction(&u).unwrap(), if ends2.accepts(&u) { 1.0 } else { 0.0 });
        }
        assert!(laf_from_level_dfas(&[(1.0, ends2.clone()), (0.5, ends2)], 2).is_err());
        let all = Dfa::new(a, 0, vec![vec![0, 0]], vec![true]).unwrap();
        let c = laf_from_level_dfas(&[(1.0, all)], 3).unwrap();
        assert!(c.table(3).values().iter().all(|&v| v == 1.0));
    }
}
