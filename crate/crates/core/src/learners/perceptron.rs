use crate::error::{Error, Result};
use crate::types::{check_dim, dot_unchecked, Example};

/// Mistake-driven perceptron, unit learning rate, no bias.
///
/// `w_sum` accumulates the post-update weights after every example, so the
/// averaged perceptron is `w_sum / n_updates_seen`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerceptronState {
    w: Vec<f64>,
    w_sum: Vec<f64>,
    n_updates_seen: u64,
}

impl PerceptronState {
    pub fn new(dim: usize) -> Self {
        PerceptronState { w: vec![0.0; dim], w_sum: vec![0.0; dim], n_updates_seen: 0 }
    }

    pub fn from_parts(w: Vec<f64>, w_sum: Vec<f64>, n_updates_seen: u64) -> Result<Self> {
        check_dim(w.len(), w_sum.len())?;
        Ok(PerceptronState { w, w_sum, n_updates_seen })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn weight_sum(&self) -> &[f64] {
        &self.w_sum
    }

    pub fn n_updates_seen(&self) -> u64 {
        self.n_updates_seen
    }

    /// Returns `true` when the example was a mistake (margin ≤ 0) and `w` moved.
    pub fn learn_one(&mut self, ex: &Example) -> Result<bool> {
        check_dim(self.dim(), ex.dim())?;
        let y = ex.label.as_f64();
        let x = ex.features.as_slice();
        let mistake = y * dot_unchecked(&self.w, x) <= 0.0;
        if mistake {
            for (w, xi) in self.w.iter_mut().zip(x) {
                *w += y * xi;
            }
        }
        for (s, w) in self.w_sum.iter_mut().zip(&self.w) {
            *s += w;
        }
        self.n_updates_seen += 1;
        Ok(mistake)
    }

    pub fn averaged_weights(&self) -> Result<Vec<f64>> {
        if self.n_updates_seen == 0 {
            return Err(Error::NoData);
        }
        let n = self.n_updates_seen as f64;
        Ok(self.w_sum.iter().map(|s| s / n).collect())
    }
}
