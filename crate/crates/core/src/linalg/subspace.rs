use super::dot;
use crate::error::{Error, Result};

/// Span of a growing set of vectors, kept as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<f64>>,
    tol_rank: f64,
}

impl Subspace {
    pub fn new(ambient_dim: usize, tol_rank: f64) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            tol_rank,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Component of `v` orthogonal to the span (two Gram–Schmidt passes).
    pub fn residual(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in {}-space",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut r = v.to_vec();
        for _ in 0..2 {
            for q in &self.basis {
                let c = dot(&r, q);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[f64]) -> Result<bool> {
        let r = self.residual(v)?;
        Ok(norm2(&r) <= self.tol_rank * norm2(v).max(1.0))
    }

    /// Adds `v` if it lies outside the span; returns whether the span grew.
    pub fn try_add(&mut self, v: &[f64]) -> Result<bool> {
        let r = self.residual(v)?;
        let n = norm2(&r);
        if n <= self.tol_rank * norm2(v).max(1.0) || self.basis.len() == self.ambient_dim {
            return Ok(false);
        }
        self.basis.push(r.iter().map(|x| x / n).collect());
        Ok(true)
    }
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}
