use crate::error::Result;
use crate::learners::arow::{ArowState, CovarianceForm};
use crate::rng::RngStream;
use crate::spike::{apply_gate, confidence, sample_gate, SpikeState};
use crate::types::{check_dim, Example};

/// AROW with spike-gated training inputs.
///
/// Per example: `v_t = xᵀΣx`, fold into the running max, `ρ = v_t / v_max`,
/// gate `g_i = clip(1 − ν_i, 0, 1)` with `ν_i ~ N(μ_i, ρ)`, then the AROW
/// update runs on `x ⊙ g` (margin, rate, mean and covariance alike).
/// With spikes disabled this is exactly AROW.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiralState {
    pub arow: ArowState,
    pub spike: SpikeState,
    pub rng: RngStream,
    pub spike_enabled: bool,
}

impl SpiralState {
    pub fn new(
        dim: usize,
        r: f64,
        form: CovarianceForm,
        seed: u64,
        spike_enabled: bool,
        scale_is_variance: bool,
    ) -> Result<Self> {
        Ok(SpiralState {
            arow: ArowState::new(dim, r, form)?,
            spike: SpikeState::new(scale_is_variance),
            rng: RngStream::new(seed),
            spike_enabled,
        })
    }

    pub fn dim(&self) -> usize {
        self.arow.dim()
    }

    /// Advances the running max and the random stream, returning the gated input.
    pub fn gated_input(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let v_t = confidence(x, self.arow.sigma())?;
        let rho = self.spike.update_running_max(v_t)?;
        let gate = sample_gate(self.arow.mu(), rho, &mut self.rng, self.spike.scale_is_variance);
        apply_gate(x, &gate)
    }

    pub fn learn_one(&mut self, ex: &Example) -> Result<bool> {
        check_dim(self.dim(), ex.dim())?;
        if !self.spike_enabled {
            return Ok(self.arow.update(ex.features.as_slice(), ex.label));
        }
        let gated = self.gated_input(ex.features.as_slice())?;
        Ok(self.arow.update(&gated, ex.label))
    }
}
