//! Spike regularizer: running-max confidence and Gaussian input gates.
//!
//! During SPIRAL training every input coordinate is multiplied by a gate
//! `clip(1 − ν_i, 0, 1)` with `ν_i ~ N(μ_i, ρ)`. The spread `ρ` is the
//! item's confidence `xᵀΣx` divided by the largest confidence observed so
//! far, so uncertain items get noisier gates and features carrying large
//! positive weights are suppressed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Covariance;
use crate::rng::RngStream;
use crate::types::check_dim;

/// Rounding slack tolerated below zero before a confidence counts as negative.
pub const CONFIDENCE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpikeState {
    /// Largest confidence seen so far. Never decreases.
    pub v_max: f64,
    /// Whether `ρ` is a variance (`s = √ρ`) or a standard deviation (`s = ρ`).
    pub scale_is_variance: bool,
}

impl Default for SpikeState {
    fn default() -> Self {
        SpikeState { v_max: 0.0, scale_is_variance: true }
    }
}

impl SpikeState {
    pub fn new(scale_is_variance: bool) -> Self {
        SpikeState { v_max: 0.0, scale_is_variance }
    }

    /// Folds `v_t` into the running max and returns `ρ = clip(v_t / v_max, 0, 1)`.
    pub fn update_running_max(&mut self, v_t: f64) -> Result<f64> {
        if v_t.is_nan() || v_t < 0.0 {
            return Err(Error::InvalidArgument(format!("confidence must be non-negative, got {v_t}")));
        }
        if v_t > self.v_max {
            self.v_max = v_t;
        }
        if self.v_max > 0.0 {
            Ok((v_t / self.v_max).clamp(0.0, 1.0))
        } else {
            Ok(0.0)
        }
    }
}

/// `xᵀΣx`, with tiny negative rounding clamped to zero.
pub fn confidence(x: &[f64], sigma: &Covariance) -> Result<f64> {
    let v = sigma.quad_form(x)?;
    if v >= 0.0 {
        Ok(v)
    } else if v >= -CONFIDENCE_SLACK {
        Ok(0.0)
    } else {
        Err(Error::NotPositiveSemiDefinite(v))
    }
}

/// Draws one gate vector. Consumes exactly `mu.len()` standard normals, in
/// coordinate order, regardless of `rho`.
pub fn sample_gate(mu: &[f64], rho: f64, rng: &mut RngStream, scale_is_variance: bool) -> Vec<f64> {
    debug_assert!((0.0..=1.0).contains(&rho));
    let s = if scale_is_variance { rho.sqrt() } else { rho };
    mu.iter()
        .map(|&m| {
            let nu = m + s * rng.standard_normal();
            (1.0 - nu).clamp(0.0, 1.0)
        })
        .collect()
}

/// Elementwise `x ⊙ g`.
pub fn apply_gate(x: &[f64], gate: &[f64]) -> Result<Vec<f64>> {
    check_dim(x.len(), gate.len())?;
    Ok(x.iter().zip(gate).map(|(a, g)| a * g).collect())
}
