//! Dense symmetric covariance storage.

use crate::error::{Error, Result};
use crate::types::{check_dim, dot_unchecked};

/// Row-major `n × n` matrix, kept symmetric by its update routines.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariance {
    n: usize,
    data: Vec<f64>,
}

impl Covariance {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Covariance { n, data }
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "covariance needs {} entries for dimension {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("covariance has non-finite entries".into()));
        }
        Ok(Covariance { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    /// `Σx`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x.len())?;
        Ok(self.mul_vec_unchecked(x))
    }

    pub(crate) fn mul_vec_unchecked(&self, x: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.n.max(1)).take(self.n).map(|row| dot_unchecked(row, x)).collect()
    }

    /// `xᵀΣx`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        let sx = self.mul_vec(x)?;
        Ok(dot_unchecked(x, &sx))
    }

    /// `Σ ← (Σ − coef·s·sᵀ) / divisor`.
    pub(crate) fn rank_one_update(&mut self, s: &[f64], coef: f64, divisor: f64) {
        debug_assert_eq!(s.len(), self.n);
        for (row, &si) in self.data.chunks_exact_mut(self.n.max(1)).zip(s) {
            let a = coef * si;
            if divisor == 1.0 {
                for (v, &sj) in row.iter_mut().zip(s) {
                    *v -= a * sj;
                }
            } else {
                for (v, &sj) in row.iter_mut().zip(s) {
                    *v = (*v - a * sj) / divisor;
                }
            }
        }
    }

    /// `Σ ← (Σ + Σᵀ)/2`.
    pub fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }

    /// Largest `|Σ_ij − Σ_ji|` relative to the largest entry magnitude.
    pub fn max_relative_asymmetry(&self) -> f64 {
        let n = self.n;
        let scale = self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i]).abs());
            }
        }
        worst / scale
    }
}
