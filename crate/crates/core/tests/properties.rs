use probautomata::general_pa::GeneralPA;
use probautomata::io::{from_json, to_json, Document};
use probautomata::languages::{
    binarize_output, definite_rep, enumerate, ergodic_test, extract_dfa, fold_initial, general_language_pa, member, shift_cutpoint, Dfa,
};
use probautomata::linalg::{norm_spread, Matrix, StochasticMatrix, Subspace, Tolerances};
use probautomata::linear::{
    disting_degree, e_f_dimension, hankel_block, la_language_pa, reach_degree, realize, LaBinary, LaUnary, LinearAutomaton,
    StringFunctionTable,
};
use probautomata::moore_pa::{dfa_to_pa, MoorePA};
use probautomata::sequences::MarkovChain;
use probautomata::words::{concat, words_of_len, words_up_to, Alphabet};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn alpha(m: usize) -> Alphabet {
    Alphabet::new((0..m).map(|i| format!("s{}", i))).unwrap()
}

fn stochastic(rng: &mut StdRng, rows: usize, cols: usize, sparse: bool) -> Matrix {
    let mut m = Matrix::from_fn(rows, cols, |_, _| 0.0);
    for i in 0..rows {
        let keep = rng.gen_range(0..cols);
        let w: Vec<f64> = (0..cols)
            .map(|j| {
                if sparse && j != keep && rng.gen_bool(0.4) {
                    0.0
                } else {
                    rng.gen_range(0.05..1.0)
                }
            })
            .collect();
        let s: f64 = w.iter().sum();
        for j in 0..cols {
            m[(i, j)] = w[j] / s;
        }
    }
    m
}

fn positive(rng: &mut StdRng, n: usize, floor: f64) -> Matrix {
    let base = stochastic(rng, n, n, false);
    base.map(|v| floor + (1.0 - n as f64 * floor) * v)
}

fn dist(rng: &mut StdRng, n: usize) -> Vec<f64> {
    stochastic(rng, 1, n, true).row(0).to_vec()
}

fn moore(rng: &mut StdRng, n: usize, m: usize, sparse: bool) -> MoorePA {
    let trans = (0..m).map(|_| stochastic(rng, n, n, sparse)).collect();
    let lambda = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    MoorePA::new(alpha(m), trans, dist(rng, n), lambda, &tol()).unwrap()
}

fn general(rng: &mut StdRng, n: usize, nx: usize, ny: usize) -> GeneralPA {
    let mut trans = vec![Matrix::zeros(n, n); nx * ny];
    for x in 0..nx {
        let joint = stochastic(rng, n, n * ny, true);
        for y in 0..ny {
            for i in 0..n {
                for j in 0..n {
                    trans[x * ny + y][(i, j)] = joint[(i, y * n + j)];
                }
            }
        }
    }
    GeneralPA::new(alpha(nx), alpha(ny), trans, dist(rng, n), &tol()).unwrap()
}

fn linear(rng: &mut StdRng, d: usize, m: usize) -> LinearAutomaton {
    let v = |rng: &mut StdRng| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let initial = v(rng);
    let lambda = v(rng);
    let trans = (0..m)
        .map(|_| Matrix::from_vec(d, d, (0..d * d).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap())
        .collect();
    LinearAutomaton::new(alpha(m), initial, trans, lambda).unwrap()
}

fn dfa(rng: &mut StdRng, n: usize, m: usize) -> Dfa {
    let delta = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..n)).collect()).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alpha(m), 0, delta, accepting).unwrap()
}

fn table(rng: &mut StdRng, m: usize, depth: usize) -> StringFunctionTable {
    StringFunctionTable::from_fn(alpha(m), depth, |_| rng.gen_range(-1.0..1.0))
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stochastic_products_stay_stochastic(seed: u64, n in 1usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = stochastic(&mut rng, n, n, true);
        let b = stochastic(&mut rng, n, n, true);
        let t = Tolerances { sum: 2.0 * tol().sum, ..tol() };
        prop_assert!(StochasticMatrix::new(a.mul(&b), &t).is_ok());
    }

    #[test]
    fn positive_matrices_contract(seed: u64, n in 2usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let floor = 0.5 / n as f64 * rng.gen_range(0.0..1.0);
        let a = positive(&mut rng, n, floor);
        let c = a.min_entry();
        let lam: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        prop_assert!(norm_spread(&a.mul_vec(&lam)) <= (1.0 - 2.0 * c) * norm_spread(&lam) + 1e-12);
    }

    #[test]
    fn averaging_moves_by_at_most_the_spread(seed: u64, n in 1usize..6, k in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = stochastic(&mut rng, n, n, true);
        let p = stochastic(&mut rng, 1, n, true);
        let q = stochastic(&mut rng, 1, n, true);
        let b = Matrix::from_vec(n, k, (0..n * k).map(|_| rng.gen_range(-2.0..2.0)).collect()).unwrap();
        let spread = b.norm_spread();
        prop_assert!(a.mul(&b).sub(&b).norm_abs() <= spread + 1e-12);
        prop_assert!(p.mul(&b).sub(&q.mul(&b)).norm_abs() <= spread + 1e-12);
    }

    #[test]
    fn subspace_stays_within_ambient(seed: u64, n in 1usize..6, tries in 1usize..20) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut s = Subspace::new(n, 1e-9);
        let mut added = 0;
        for _ in 0..tries {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if s.try_add(&v).unwrap() {
                added += 1;
            }
        }
        prop_assert!(s.dim() <= n);
        prop_assert_eq!(s.dim(), added);
        prop_assert_eq!(s.dim(), tries.min(n));
    }

    #[test]
    fn general_reactions_normalize(seed: u64, n in 1usize..4, nx in 1usize..3, ny in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = general(&mut rng, n, nx, ny);
        for len in 0..=4 {
            for u in words_of_len(nx, len) {
                let total: f64 = words_of_len(ny, len).iter().map(|v| a.reaction(&u, v).unwrap()).sum();
                prop_assert!((total - 1.0).abs() <= 1e-9 * (ny as f64).powi(len as i32));
            }
        }
    }

    #[test]
    fn general_basis_and_reduction(seed: u64, n in 1usize..5, nx in 1usize..3, ny in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = general(&mut rng, n, nx, ny);
        let b = a.basis_matrix(&tol());
        prop_assert!(b.rank() <= n);
        prop_assert!(b.sweeps <= n);
        let r = a.reduce(&tol());
        prop_assert!(r.n() <= n);
        prop_assert!(a.equivalent(&r, &tol()).unwrap());
        let rr = r.reduce(&tol());
        prop_assert_eq!(rr.n(), r.n());
        prop_assert!(rr.equivalent(&r, &tol()).unwrap());
    }

    #[test]
    fn residuals_compose(seed: u64, n in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = general(&mut rng, n, 2, 2);
        let f = a.reaction_table(4);
        let (u1, v1, u2, v2) = (vec![rng.gen_range(0..2)], vec![rng.gen_range(0..2)], vec![rng.gen_range(0..2)], vec![rng.gen_range(0..2)]);
        prop_assume!(f.value(&concat(&u1, &u2), &concat(&v1, &v2)).unwrap() > 1e-6);
        let whole = f.residual(&concat(&u1, &u2), &concat(&v1, &v2), &tol()).unwrap();
        let step = f.residual(&u1, &v1, &tol()).unwrap().residual(&u2, &v2, &tol()).unwrap();
        prop_assert_eq!(whole.depth(), step.depth());
        prop_assert!(whole.agrees(&step, 1e-9));
        prop_assert!(whole.is_probabilistic_response(&tol()));
    }

    #[test]
    fn markov_chain_functions_are_random_sequences(seed: u64, n in 1usize..5, m in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let labels = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let mc = MarkovChain::new(alpha(m), stochastic(&mut rng, n, n, true), labels, dist(&mut rng, n), &tol()).unwrap();
        let rs = mc.to_random_sequence(5, &tol()).unwrap();
        prop_assert!(rs.validate(&tol()).is_ok());
        if let Some(g) = rs.automaton(&tol()) {
            for u in words_up_to(m, 5) {
                prop_assert!((g.reaction(&vec![0; u.len()], &u).unwrap() - rs.value(&u).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn reduce_avg_keeps_reactions(seed: u64, n in 1usize..5, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut a = moore(&mut rng, n, m, true);
        if rng.gen_bool(0.5) && n > 1 {
            // force a convex state: state n−1 copies a mixture of rows 0 and 1
            let lam = a.lambda().to_vec();
            let mix = |r0: &[f64], r1: &[f64]| r0.iter().zip(r1).map(|(p, q)| 0.5 * p + 0.5 * q).collect::<Vec<f64>>();
            let trans = a.matrices().into_iter().map(|t| {
                let mut t = t;
                let row = mix(t.row(0), t.row(1.min(n - 1)));
                for (j, v) in row.into_iter().enumerate() { t[(n - 1, j)] = v; }
                t
            }).collect();
            let mut lam2 = lam.clone();
            lam2[n - 1] = 0.5 * lam[0] + 0.5 * lam[1.min(n - 1)];
            a = MoorePA::new(a.inputs().clone(), trans, a.initial().to_vec(), lam2, &tol()).unwrap();
        }
        let r = a.reduce_avg(&tol());
        prop_assert!(r.n() <= n);
        let (fa, fr) = (a.reactions_up_to(4), r.reactions_up_to(4));
        for (x, y) in fa.iter().zip(&fr) {
            prop_assert!((x - y).abs() < 1e-8);
        }
        let b = a.avg_basis_matrix(&tol());
        prop_assert!(b.rank() <= n);
        prop_assert!(b.sweeps <= n);
    }

    #[test]
    fn dfa_embedding_is_the_indicator(seed: u64, n in 1usize..6, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = dfa(&mut rng, n, m);
        let pa = dfa_to_pa(&d);
        for u in words_up_to(m, 5) {
            let want = if d.accepts(&u) { 1.0 } else { 0.0 };
            prop_assert_eq!(pa.avg_reaction(&u).unwrap(), want);
        }
    }

    #[test]
    fn linear_operations_are_homomorphisms(seed: u64, d1 in 1usize..4, d2 in 1usize..4, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l1 = linear(&mut rng, d1, m);
        let l2 = linear(&mut rng, d2, m);
        let (f1, f2) = (l1.table(4), l2.table(4));
        let eps = 1e-9;
        let sum = l1.combine(LaBinary::Sum, &l2).unwrap();
        prop_assert_eq!(sum.dim(), d1 + d2);
        prop_assert!(sum.table(4).max_abs_diff(&f1.add(&f2).unwrap()) < eps);
        let prod = l1.combine(LaBinary::Product, &l2).unwrap();
        prop_assert_eq!(prod.dim(), d1 * d2);
        prop_assert!(prod.table(4).max_abs_diff(&f1.mul(&f2).unwrap()) < eps);
        let conv = l1.combine(LaBinary::Convolution, &l2).unwrap();
        prop_assert_eq!(conv.dim(), d1 + d2);
        prop_assert!(conv.table(4).max_abs_diff(&f1.conv(&f2).unwrap()) < eps);
        let c = rng.gen_range(-2.0..2.0);
        prop_assert!(l1.unary(LaUnary::Scale(c), &tol()).unwrap().table(4).max_abs_diff(&f1.scale(c)) < eps);
        prop_assert!(l1.unary(LaUnary::Reverse, &tol()).unwrap().table(4).max_abs_diff(&f1.reverse()) < eps);
        let g = LinearAutomaton::letter(alpha(m), 0).combine(LaBinary::Convolution, &l1).unwrap();
        let gt = g.table(4);
        let plus = g.unary(LaUnary::Iterate, &tol()).unwrap();
        prop_assert!(plus.table(4).max_abs_diff(&gt.iteration(tol().zero).unwrap()) < 1e-8);
    }

    #[test]
    fn realization_matches_hankel_rank(seed: u64, d in 1usize..4, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = linear(&mut rng, d, m);
        let bound = d + 1;
        let f = l.table(2 * bound);
        let h = hankel_block(&f, bound, bound).unwrap();
        let rank = h.scale(1.0 / h.norm_abs()).rank(tol().rank);
        let r = realize(&f, bound, &tol());
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        prop_assert_eq!(r.dim(), rank);
        prop_assert_eq!(e_f_dimension(&f, 2 * bound, &tol()).unwrap(), rank);
        let peak = f.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!(r.table(2 * bound).max_abs_diff(&f) < 1e-6 * (1.0 + peak));
    }

    #[test]
    fn convolution_ring_axioms(seed: u64, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, g, h) = (table(&mut rng, m, 4), table(&mut rng, m, 4), table(&mut rng, m, 4));
        let left = f.conv(&g).unwrap().conv(&h).unwrap();
        let right = f.conv(&g.conv(&h).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-9);
        let unit = StringFunctionTable::unit(alpha(m), 4);
        prop_assert!(unit.conv(&f).unwrap().max_abs_diff(&f) < 1e-15);
        prop_assert!(f.conv(&unit).unwrap().max_abs_diff(&f) < 1e-15);
        let lifted = f.add(&unit.scale(2.0)).unwrap();
        let inv = lifted.inverse(tol().zero).unwrap();
        prop_assert!(lifted.conv(&inv).unwrap().max_abs_diff(&unit) < 1e-9);
        prop_assert!(inv.conv(&lifted).unwrap().max_abs_diff(&unit) < 1e-9);
    }

    #[test]
    fn degrees_stay_below_dimension(seed: u64, d in 1usize..5, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = linear(&mut rng, d, m);
        prop_assert!(reach_degree(&l, &tol()) < d);
        prop_assert!(disting_degree(&l, &tol()) < d);
    }

    #[test]
    fn extracted_dfa_agrees_with_membership(seed: u64, n in 1usize..6, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let pa = dfa_to_pa(&dfa(&mut rng, n, m));
        let e = extract_dfa(&pa, 0.5, 0.25).unwrap();
        let depth = 6usize.max(2 * e.dfa.n());
        for u in words_up_to(m, depth) {
            prop_assert_eq!(e.dfa.accepts(&u), member(&pa, 0.5, &u).unwrap());
        }
        prop_assert!(e.dfa.n() <= n);
    }

    #[test]
    fn definite_suffix_table_decides(seed: u64, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = 2;
        let trans = (0..m).map(|_| positive(&mut rng, n, 0.2)).collect();
        let a = MoorePA::new(alpha(m), trans, dist(&mut rng, n), vec![1.0, 0.0], &tol()).unwrap();
        let mut vals = a.reactions_up_to(8);
        vals.retain(|v| *v < 1.0);
        vals.sort_by(f64::total_cmp);
        let (gap, cut) = vals.windows(2).map(|w| (w[1] - w[0], 0.5 * (w[0] + w[1]))).fold((0.0, 0.0), |b, g| if g.0 > b.0 { g } else { b });
        prop_assume!(gap > 1e-3);
        match definite_rep(&a, cut, 0.45 * gap, &tol()) {
            Ok(Some(rep)) => {
                for len in rep.k..=rep.k + 2 {
                    for u in words_of_len(m, len) {
                        prop_assert_eq!(rep.member(&u), member(&a, cut, &u).unwrap());
                    }
                }
            }
            Ok(None) => prop_assert!(false, "positive automaton must be definite"),
            Err(_) => {}
        }
    }

    #[test]
    fn ergodic_matrices_decay(seed: u64, n in 2usize..4, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = moore(&mut rng, n, m, true);
        if ergodic_test(&a, &tol()).ergodic {
            for _ in 0..8 {
                let u2: Vec<usize> = (0..2).map(|_| rng.gen_range(0..m)).collect();
                let w: Vec<usize> = (0..6).map(|_| rng.gen_range(0..m)).collect();
                let long = a.word_matrix(&concat(&w, &u2)).unwrap().norm_spread();
                prop_assert!(long <= a.word_matrix(&u2).unwrap().norm_spread() + 1e-12);
            }
        }
    }

    #[test]
    fn cut_point_constructions_keep_languages(seed: u64, n in 1usize..4, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = moore(&mut rng, n, m, true);
        let cut = rng.gen_range(0.05..0.95);
        let lang = enumerate(&a, cut, 4);
        prop_assert_eq!(enumerate(&fold_initial(&a), cut, 4), lang.clone());
        let bin = binarize_output(&a, &tol()).unwrap();
        for (x, y) in a.reactions_up_to(4).iter().zip(bin.reactions_up_to(4)) {
            prop_assert!(close(*x, y, 1e-12));
        }
        let to = rng.gen_range(0.05..0.95);
        let shifted = shift_cutpoint(&a, cut, to).unwrap();
        let f = a.reactions_up_to(4);
        let g = shifted.reactions_up_to(4);
        for ((u, x), y) in words_up_to(m, 4).iter().zip(&f).zip(&g) {
            if (x - cut).abs() > 1e-9 {
                prop_assert_eq!(*x > cut, *y > to, "word {:?}", u);
            }
        }
    }

    #[test]
    fn general_language_matches_last_output(seed: u64, n in 1usize..4, nx in 1usize..3, ny in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = general(&mut rng, n, nx, ny);
        let y = rng.gen_range(0..ny);
        let b = general_language_pa(&g, y).unwrap();
        for len in 1..=4 {
            for u in words_of_len(nx, len) {
                let want: f64 = words_of_len(ny, len).iter().filter(|v| v.last() == Some(&y)).map(|v| g.reaction(&u, v).unwrap()).sum();
                prop_assert!((b.avg_reaction(&u).unwrap() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn linear_cut_language_embeds(seed: u64, d in 1usize..4, m in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = linear(&mut rng, d, m);
        let a = rng.gen_range(-0.5..0.5);
        let pa = la_language_pa(&l, a, &tol()).unwrap();
        prop_assert_eq!(pa.n(), d + 4);
        let cut = 1.0 / (d + 4) as f64;
        for u in words_up_to(m, 4) {
            let f = l.reaction(&u).unwrap();
            let scale = (f - a).abs();
            if scale > 1e-6 {
                prop_assert_eq!(pa.avg_reaction(&u).unwrap() > cut, f > a, "word {:?}", u);
            }
        }
    }

    #[test]
    fn json_round_trips(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..4);
        let m = rng.gen_range(1..3);
        let labels = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let mc = MarkovChain::new(alpha(m), stochastic(&mut rng, n, n, true), labels, dist(&mut rng, n), &tol()).unwrap();
        let docs = vec![
            Document::GeneralPA(general(&mut rng, n, m, 2)),
            Document::MoorePA(moore(&mut rng, n, m, true)),
            Document::LinearAutomaton(linear(&mut rng, n, m)),
            Document::RandomSequence(mc.to_random_sequence(3, &tol()).unwrap()),
            Document::MarkovChain(mc),
            Document::Dfa(dfa(&mut rng, n, m)),
            Document::StringFunction(table(&mut rng, m, 3)),
        ];
        for d in docs {
            let text = to_json(&d);
            let back = from_json(&text, &tol()).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(to_json(&back), text);
        }
    }
}
