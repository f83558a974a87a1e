//! Truncated function tables over X^{≤depth} and the breadth-first residual closure
//! shared by reaction tables and random sequences.

use crate::error::{Error, Result};
use crate::words::{count_up_to, shortlex_index, words_up_to};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct WordTable {
    pub m: usize,
    pub depth: usize,
    pub values: Vec<f64>,
}

impl WordTable {
    pub fn new(m: usize, depth: usize, values: Vec<f64>) -> Result<Self> {
        let need = count_up_to(m, depth);
        if values.len() != need {
            return Err(Error::Dimension(format!(
                "table has {} values, depth {} needs {}",
                values.len(),
                depth,
                need
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite table value".into()));
        }
        Ok(WordTable { m, depth, values })
    }

    pub fn from_fn(m: usize, depth: usize, f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut f = f;
        let values = words_up_to(m, depth).iter().map(|w| f(w)).collect();
        WordTable { m, depth, values }
    }

    pub fn get(&self, w: &[usize]) -> Option<f64> {
        if w.len() > self.depth {
            return None;
        }
        Some(self.values[shortlex_index(self.m, w)])
    }

    pub fn at(&self, w: &[usize]) -> f64 {
        self.values[shortlex_index(self.m, w)]
    }

    /// g(w′) = f(w w′)/f(w), valid to depth − |w|.
    pub fn residual(&self, w: &[usize], tol_zero: f64) -> Result<WordTable> {
        let base = self.get(w).ok_or(Error::Depth {
            have: self.depth,
            need: w.len(),
        })?;
        if base.abs() <= tol_zero {
            return Err(Error::ZeroMass(format!("{:?}", w)));
        }
        let d = self.depth - w.len();
        Ok(WordTable::from_fn(self.m, d, |v| {
            let mut ww = w.to_vec();
            ww.extend_from_slice(v);
            self.at(&ww) / base
        }))
    }

    /// Values agree within `tol` on every word of length ≤ `depth`.
    pub fn agrees(&self, other: &WordTable, depth: usize, tol: f64) -> bool {
        let n = count_up_to(self.m, depth);
        self.values[..n].iter().zip(&other.values[..n]).all(|(a, b)| (a - b).abs() <= tol)
    }

    /// f(w) = Σ_x f(wx) for all |w| < depth.
    pub fn is_additive(&self, tol: f64) -> bool {
        if self.depth == 0 {
            return true;
        }
        words_up_to(self.m, self.depth - 1).iter().all(|w| {
            let s: f64 = (0..self.m)
                .map(|x| {
                    let mut wx = w.clone();
                    wx.push(x);
                    self.at(&wx)
                })
                .sum();
            (s - self.at(w)).abs() <= tol
        })
    }
}

pub(crate) struct Closure {
    pub states: Vec<WordTable>,
    /// (from, letter, to, probability)
    pub edges: Vec<(usize, usize, usize, f64)>,
}

/// Residuals of `f` explored breadth-first. Every state is compared on depth at
/// least ⌈D/2⌉; when some state cannot be expanded with that much evidence the
/// closure is reported absent.
pub(crate) fn residual_closure(f: &WordTable, tol_zero: f64, tol_cmp: f64) -> Option<Closure> {
    let need = f.depth.div_ceil(2).max(1);
    let mut states = vec![f.clone()];
    let mut edges = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let g = states[next].clone();
        if g.depth < need + 1 {
            return None;
        }
        for l in 0..f.m {
            let p = g.at(&[l]);
            if p <= tol_zero {
                continue;
            }
            let h = g.residual(&[l], tol_zero).ok()?;
            let found = states.iter().position(|s| s.agrees(&h, s.depth.min(h.depth), tol_cmp));
            let to = match found {
                Some(s) => s,
                None => {
                    states.push(h);
                    states.len() - 1
                }
            };
            edges.push((next, l, to, p));
        }
        next += 1;
    }
    Some(Closure { states, edges })
}

/// Table of out(ξ·M^{w}) over all |w| ≤ depth, computed layer by layer.
pub(crate) fn forward_table(
    m: usize,
    depth: usize,
    init: Vec<f64>,
    step: impl Fn(&[f64], usize) -> Vec<f64>,
    out: impl Fn(&[f64]) -> f64,
) -> WordTable {
    let mut values = vec![out(&init)];
    let mut layer = vec![init];
    for _ in 0..depth {
        let mut nextl = Vec::with_capacity(layer.len() * m);
        for v in &layer {
            for l in 0..m {
                let w = step(v, l);
                values.push(out(&w));
                nextl.push(w);
            }
        }
        layer = nextl;
    }
    WordTable { m, depth, values }
}
