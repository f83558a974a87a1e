use super::Matrix;
use crate::error::{Error, Result};

/// min c·x subject to A_eq·x = b, x ≥ 0.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub c: Vec<f64>,
    pub a_eq: Matrix,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
}

const PIVOT_EPS: f64 = 1e-11;
const MAX_ITER: usize = 100_000;

struct Tableau {
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[f64], allowed: usize) -> Vec<f64> {
        (0..allowed)
            .map(|j| cost[j] - self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.t[i][j]).sum::<f64>())
            .collect()
    }

    /// Bland's rule simplex over columns `0..allowed`. Returns false when unbounded.
    fn run(&mut self, cost: &[f64], allowed: usize, tol: f64) -> bool {
        for _ in 0..MAX_ITER {
            let rc = self.reduced_costs(cost, allowed);
            let Some(enter) = (0..allowed).find(|&j| rc[j] < -tol) else {
                return true;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let a = self.t[i][enter];
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-15 || ((ratio - lr).abs() <= 1e-15 && self.basis[i] < self.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
        true
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rhs(i)).sum()
    }
}

/// Dense two-phase simplex with Bland's anti-cycling rule.
pub fn lp_solve(p: &LpProblem, tol_lp: f64) -> Result<LpSolution> {
    let m = p.a_eq.rows();
    let n = p.a_eq.cols();
    if p.c.len() != n || p.b.len() != m {
        return Err(Error::Dimension("LP sizes".into()));
    }
    let width = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if p.b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; width + 1];
        for j in 0..n {
            row[j] = sign * p.a_eq[(i, j)];
        }
        row[n + i] = 1.0;
        row[width] = sign * p.b[i];
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        width,
    };

    let mut phase1 = vec![0.0; width];
    for c in phase1.iter_mut().skip(n) {
        *c = 1.0;
    }
    tab.run(&phase1, width, tol_lp * 1e-3);
    let infeas = tab.objective(&phase1);
    let scale = 1.0 + p.b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if infeas > tol_lp * scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            objective: f64::NAN,
        });
    }

    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.t[i][j].abs() > PIVOT_EPS) {
                tab.pivot(i, j);
                i += 1;
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut cost = p.c.clone();
    cost.resize(width, 0.0);
    if !tab.run(&cost, n, tol_lp * 1e-3) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: vec![0.0; n],
            objective: f64::NEG_INFINITY,
        });
    }
    let mut x = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).max(0.0);
        }
    }
    let objective = p.c.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(c: Vec<f64>, a: &[Vec<f64>], b: Vec<f64>) -> LpSolution {
        lp_solve(
            &LpProblem {
                c,
                a_eq: Matrix::from_rows(a).unwrap(),
                b,
            },
            1e-9,
        )
        .unwrap()
    }

    #[test]
    fn min_y() {
        let s = solve(vec![0.0, 1.0], &[vec![1.0, 1.0]], vec![1.0]);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.objective.abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && s.x[1].abs() < 1e-12);
    }

    #[test]
    fn infeasible() {
        let s = solve(vec![0.0], &[vec![1.0]], vec![-1.0]);
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded() {
        let s = solve(vec![-1.0, 0.0], &[vec![1.0, -1.0]], vec![0.0]);
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let s = solve(vec![1.0, 2.0], &[vec![1.0, 1.0], vec![2.0, 2.0]], vec![1.0, 2.0]);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_instance() {
        // Beale's example, which cycles under the textbook most-negative rule
        let a = vec![
            vec![0.25, -60.0, -0.04, 9.0, 1.0, 0.0, 0.0],
            vec![0.5, -90.0, -0.02, 3.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        ];
        let s = solve(vec![-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0], &a, vec![0.0, 0.0, 1.0]);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 0.05).abs() < 1e-9);
    }
}
