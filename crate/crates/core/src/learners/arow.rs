use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Covariance;
use crate::types::{check_dim, dot_unchecked, Example, Label};

/// How the covariance shrinks after an update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CovarianceForm {
    /// `Σ ← Σ − ΣxxᵀΣ / (xᵀΣx + r)`, the usual AROW update.
    #[default]
    Standard,
    /// `Σ ← (Σ − ΣxxᵀΣ) / (xᵀΣx + r)`: the whole matrix is divided.
    /// Does not preserve positive semi-definiteness once `xᵀΣx > 1`.
    PaperLiteral,
}

impl CovarianceForm {
    pub fn name(self) -> &'static str {
        match self {
            CovarianceForm::Standard => "standard",
            CovarianceForm::PaperLiteral => "paper-literal",
        }
    }
}

impl std::str::FromStr for CovarianceForm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "standard" => Ok(CovarianceForm::Standard),
            "paper-literal" => Ok(CovarianceForm::PaperLiteral),
            other => Err(format!("unknown covariance form '{other}' (valid: standard, paper-literal)")),
        }
    }
}

/// Gaussian over weight vectors: mean `mu`, covariance `sigma`, smoothing `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArowState {
    mu: Vec<f64>,
    sigma: Covariance,
    r: f64,
    form: CovarianceForm,
}

impl ArowState {
    /// `μ = 0`, `Σ = I`.
    pub fn new(dim: usize, r: f64, form: CovarianceForm) -> Result<Self> {
        check_r(r)?;
        Ok(ArowState { mu: vec![0.0; dim], sigma: Covariance::identity(dim), r, form })
    }

    pub fn from_parts(mu: Vec<f64>, sigma: Covariance, r: f64, form: CovarianceForm) -> Result<Self> {
        check_r(r)?;
        check_dim(mu.len(), sigma.dim())?;
        Ok(ArowState { mu, sigma, r, form })
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn sigma(&self) -> &Covariance {
        &self.sigma
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn form(&self) -> CovarianceForm {
        self.form
    }

    /// Adaptive learning rate `max(0, 1 − y·xᵀμ) / (xᵀΣx + r)`.
    pub fn alpha(&self, x: &[f64], y: Label) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        let hinge = (1.0 - y.as_f64() * dot_unchecked(x, &self.mu)).max(0.0);
        let sx = self.sigma.mul_vec_unchecked(x);
        Ok(hinge / (dot_unchecked(x, &sx) + self.r))
    }

    /// Returns `true` if the margin condition `m·y < 1` fired and the state moved.
    pub fn learn_one(&mut self, ex: &Example) -> Result<bool> {
        check_dim(self.dim(), ex.dim())?;
        Ok(self.update(ex.features.as_slice(), ex.label))
    }

    pub(crate) fn update(&mut self, x: &[f64], y: Label) -> bool {
        let y = y.as_f64();
        let margin = dot_unchecked(&self.mu, x);
        if margin * y >= 1.0 {
            return false;
        }
        let sx = self.sigma.mul_vec_unchecked(x);
        let denom = dot_unchecked(x, &sx) + self.r;
        let alpha = (1.0 - y * margin).max(0.0) / denom;
        for (m, s) in self.mu.iter_mut().zip(&sx) {
            *m += alpha * y * s;
        }
        match self.form {
            CovarianceForm::Standard => self.sigma.rank_one_update(&sx, 1.0 / denom, 1.0),
            CovarianceForm::PaperLiteral => self.sigma.rank_one_update(&sx, 1.0, denom),
        }
        self.sigma.symmetrize();
        true
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("smoothing constant r must be positive, got {r}")))
    }
}
