use super::Matrix;
use crate::error::{Error, Result};

/// 0/1 pattern of a matrix with the boolean product (1+1=1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolPattern {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BoolPattern {
    /// Nonzero entries (|a| > tol_zero) become 1.
    pub fn of(m: &Matrix, tol_zero: f64) -> Self {
        BoolPattern {
            rows: m.rows(),
            cols: m.cols(),
            bits: m.data().iter().map(|v| v.abs() > tol_zero).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        BoolPattern {
            rows: n,
            cols: n,
            bits: (0..n * n).map(|k| k / n == k % n).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Empty);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged pattern".into()));
        }
        Ok(BoolPattern {
            rows: rows.len(),
            cols,
            bits: rows.concat(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn mul(&self, other: &BoolPattern) -> Result<BoolPattern> {
        if self.cols != other.rows {
            return Err(Error::Dimension("boolean product".into()));
        }
        let mut bits = vec![false; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if !self.get(i, k) {
                    continue;
                }
                for j in 0..other.cols {
                    if other.get(k, j) {
                        bits[i * other.cols + j] = true;
                    }
                }
            }
        }
        Ok(BoolPattern {
            rows: self.rows,
            cols: other.cols,
            bits,
        })
    }

    /// Some boolean power is all ones. Powers are checked up to (d−1)²+1.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::Dimension("primitivity of a non-square pattern".into()));
        }
        let d = self.rows;
        let bound = (d - 1) * (d - 1) + 1;
        let mut p = self.clone();
        for _ in 0..bound {
            if p.all_ones() {
                return Ok(true);
            }
            p = p.mul(self)?;
        }
        Ok(p.all_ones())
    }
}

pub fn bool_mul(p: &BoolPattern, q: &BoolPattern) -> Result<BoolPattern> {
    p.mul(q)
}
