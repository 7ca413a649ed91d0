//! Versioned JSON model documents.
//!
//! Floats are written with shortest round-trip formatting, so a saved model
//! reloads bit-for-bit. SPIRAL's random stream is not stored: a reloaded
//! SPIRAL model restarts its stream from `seed`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learners::{
    Algorithm, ArowState, CovarianceForm, LearnerConfig, Model, OnlineLearner, PerceptronState, SpiralState,
};
use crate::matrix::Covariance;
use crate::rng::RngStream;
use crate::spike::SpikeState;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpikeDocument {
    pub v_max: f64,
    pub enabled: bool,
    pub scale_is_variance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub format_version: u32,
    pub algorithm: Algorithm,
    pub d: usize,
    pub r: f64,
    pub epochs: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    /// Row-major `d·d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_sum: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_updates_seen: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spike: Option<SpikeDocument>,
    pub covariance_update_form: CovarianceForm,
}

impl ModelDocument {
    pub fn from_model(model: &Model, config: &LearnerConfig) -> Self {
        let mut doc = ModelDocument {
            format_version: FORMAT_VERSION,
            algorithm: model.algorithm(),
            d: model.dim(),
            r: config.r,
            epochs: config.epochs,
            seed: config.seed,
            mu: None,
            sigma: None,
            w: None,
            w_sum: None,
            n_updates_seen: None,
            spike: None,
            covariance_update_form: config.covariance_form,
        };
        match model {
            Model::Perceptron(p) | Model::AveragedPerceptron(p) => {
                doc.w = Some(p.weights().to_vec());
                doc.w_sum = Some(p.weight_sum().to_vec());
                doc.n_updates_seen = Some(p.n_updates_seen());
            }
            Model::Arow(s) => doc.set_arow(s),
            Model::Spiral(s) => {
                doc.set_arow(&s.arow);
                doc.spike = Some(SpikeDocument {
                    v_max: s.spike.v_max,
                    enabled: s.spike_enabled,
                    scale_is_variance: s.spike.scale_is_variance,
                });
            }
            Model::Constant { .. } => {}
        }
        doc
    }

    fn set_arow(&mut self, s: &ArowState) {
        self.r = s.r();
        self.covariance_update_form = s.form();
        self.mu = Some(s.mu().to_vec());
        self.sigma = Some(s.sigma().as_row_major().to_vec());
    }

    pub fn learner_config(&self) -> LearnerConfig {
        let mut cfg = LearnerConfig::new(self.algorithm, self.seed);
        cfg.r = self.r;
        cfg.epochs = self.epochs;
        cfg.covariance_form = self.covariance_update_form;
        if let Some(spike) = self.spike {
            cfg.spike_enabled = spike.enabled;
            cfg.spike_scale_is_variance = spike.scale_is_variance;
        }
        cfg
    }

    pub fn into_model(self) -> Result<(Model, LearnerConfig)> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Model(format!("unsupported format_version {}", self.format_version)));
        }
        let config = self.learner_config();
        let d = self.d;
        let need = |field: Option<Vec<f64>>, name: &str, len: usize| -> Result<Vec<f64>> {
            let v = field.ok_or_else(|| Error::Model(format!("missing field '{name}'")))?;
            if v.len() != len {
                return Err(Error::Model(format!("'{name}' has {} entries, expected {len}", v.len())));
            }
            Ok(v)
        };
        let model = match self.algorithm {
            Algorithm::Perceptron | Algorithm::AveragedPerceptron => {
                let p = PerceptronState::from_parts(
                    need(self.w, "w", d)?,
                    need(self.w_sum, "w_sum", d)?,
                    self.n_updates_seen.unwrap_or(0),
                )?;
                if self.algorithm == Algorithm::Perceptron {
                    Model::Perceptron(p)
                } else {
                    Model::AveragedPerceptron(p)
                }
            }
            Algorithm::Arow | Algorithm::Spiral => {
                let sigma = Covariance::from_row_major(d, need(self.sigma, "sigma", d * d)?)?;
                let arow = ArowState::from_parts(need(self.mu, "mu", d)?, sigma, self.r, self.covariance_update_form)?;
                if self.algorithm == Algorithm::Arow {
                    Model::Arow(arow)
                } else {
                    let spike = self.spike.ok_or_else(|| Error::Model("missing field 'spike'".into()))?;
                    Model::Spiral(SpiralState {
                        arow,
                        spike: SpikeState { v_max: spike.v_max, scale_is_variance: spike.scale_is_variance },
                        rng: RngStream::new(self.seed),
                        spike_enabled: spike.enabled,
                    })
                }
            }
            Algorithm::Constant => Model::Constant { dim: d },
        };
        Ok((model, config))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn save_model(path: &Path, model: &Model, config: &LearnerConfig) -> Result<()> {
    let text = ModelDocument::from_model(model, config).to_json()?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<(Model, LearnerConfig)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ModelDocument::from_json(&text)?.into_model()
}
