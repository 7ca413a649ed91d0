//! Online learners behind one contract: observe a labeled example, predict a label.

mod arow;
mod perceptron;
mod spiral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use arow::{ArowState, CovarianceForm};
pub use perceptron::PerceptronState;
pub use spiral::SpiralState;

use crate::error::{Error, Result};
use crate::types::{check_dim, dot_unchecked, Dataset, Example, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Perceptron,
    AveragedPerceptron,
    Arow,
    Spiral,
    /// Ignores the data and always predicts +1. A random-baseline control.
    Constant,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Perceptron,
        Algorithm::AveragedPerceptron,
        Algorithm::Arow,
        Algorithm::Spiral,
        Algorithm::Constant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Perceptron => "perceptron",
            Algorithm::AveragedPerceptron => "averaged-perceptron",
            Algorithm::Arow => "arow",
            Algorithm::Spiral => "spiral",
            Algorithm::Constant => "constant",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL.iter().copied().find(|a| a.name() == s).ok_or_else(|| {
            let valid: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            format!("unknown algorithm '{s}' (valid: {})", valid.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub algorithm: Algorithm,
    pub r: f64,
    pub epochs: usize,
    pub seed: u64,
    pub covariance_form: CovarianceForm,
    pub spike_enabled: bool,
    pub spike_scale_is_variance: bool,
}

impl LearnerConfig {
    pub const DEFAULT_R: f64 = 0.1;

    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        LearnerConfig {
            algorithm,
            r: Self::DEFAULT_R,
            epochs: 1,
            seed,
            covariance_form: CovarianceForm::Standard,
            spike_enabled: true,
            spike_scale_is_variance: true,
        }
    }

    pub fn with_algorithm(&self, algorithm: Algorithm) -> Self {
        LearnerConfig { algorithm, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::InvalidArgument(format!("r must be positive, got {}", self.r)));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidArgument("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

pub trait OnlineLearner {
    fn dim(&self) -> usize;

    fn learn_one(&mut self, ex: &Example) -> Result<()>;
}

/// Deterministic linear prediction, `sign(w·x)` with `sign(0) = +1`.
pub trait Predict {
    fn dim(&self) -> usize;

    fn score(&self, x: &[f64]) -> Result<f64>;

    fn predict(&self, x: &[f64]) -> Result<Label> {
        self.score(x).map(Label::from_score)
    }
}

/// Frozen inference weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearClassifier {
    weights: Vec<f64>,
}

impl LinearClassifier {
    pub fn new(weights: Vec<f64>) -> Self {
        LinearClassifier { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Predict for LinearClassifier {
    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn score(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.weights.len(), x.len())?;
        Ok(dot_unchecked(&self.weights, x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Perceptron(PerceptronState),
    AveragedPerceptron(PerceptronState),
    Arow(ArowState),
    Spiral(SpiralState),
    Constant { dim: usize },
}

impl Model {
    /// Fresh state: `w = 0`, `μ = 0`, `Σ = I`, `v = 0`.
    pub fn new(config: &LearnerConfig, dim: usize) -> Result<Model> {
        config.validate()?;
        Ok(match config.algorithm {
            Algorithm::Perceptron => Model::Perceptron(PerceptronState::new(dim)),
            Algorithm::AveragedPerceptron => Model::AveragedPerceptron(PerceptronState::new(dim)),
            Algorithm::Arow => Model::Arow(ArowState::new(dim, config.r, config.covariance_form)?),
            Algorithm::Spiral => Model::Spiral(SpiralState::new(
                dim,
                config.r,
                config.covariance_form,
                config.seed,
                config.spike_enabled,
                config.spike_scale_is_variance,
            )?),
            Algorithm::Constant => Model::Constant { dim },
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            Model::Perceptron(_) => Algorithm::Perceptron,
            Model::AveragedPerceptron(_) => Algorithm::AveragedPerceptron,
            Model::Arow(_) => Algorithm::Arow,
            Model::Spiral(_) => Algorithm::Spiral,
            Model::Constant { .. } => Algorithm::Constant,
        }
    }

    pub fn arow(&self) -> Option<&ArowState> {
        match self {
            Model::Arow(s) => Some(s),
            Model::Spiral(s) => Some(&s.arow),
            _ => None,
        }
    }

    /// Weights used at prediction time. The averaged perceptron falls back to
    /// its (zero) current weights before it has seen any data.
    pub fn inference_weights(&self) -> Vec<f64> {
        match self {
            Model::Perceptron(p) => p.weights().to_vec(),
            Model::AveragedPerceptron(p) => p.averaged_weights().unwrap_or_else(|_| p.weights().to_vec()),
            Model::Arow(s) => s.mu().to_vec(),
            Model::Spiral(s) => s.arow.mu().to_vec(),
            Model::Constant { dim } => vec![0.0; *dim],
        }
    }

    pub fn classifier(&self) -> LinearClassifier {
        LinearClassifier::new(self.inference_weights())
    }
}

impl OnlineLearner for Model {
    fn dim(&self) -> usize {
        match self {
            Model::Perceptron(p) | Model::AveragedPerceptron(p) => p.dim(),
            Model::Arow(s) => s.dim(),
            Model::Spiral(s) => s.dim(),
            Model::Constant { dim } => *dim,
        }
    }

    fn learn_one(&mut self, ex: &Example) -> Result<()> {
        match self {
            Model::Perceptron(p) | Model::AveragedPerceptron(p) => p.learn_one(ex).map(drop),
            Model::Arow(s) => s.learn_one(ex).map(drop),
            Model::Spiral(s) => s.learn_one(ex).map(drop),
            Model::Constant { dim } => check_dim(*dim, ex.dim()),
        }
    }
}

impl Predict for Model {
    fn dim(&self) -> usize {
        OnlineLearner::dim(self)
    }

    fn score(&self, x: &[f64]) -> Result<f64> {
        check_dim(OnlineLearner::dim(self), x.len())?;
        let score = match self {
            Model::Perceptron(p) => dot_unchecked(p.weights(), x),
            Model::Arow(s) => dot_unchecked(s.mu(), x),
            Model::Spiral(s) => dot_unchecked(s.arow.mu(), x),
            Model::AveragedPerceptron(_) | Model::Constant { .. } => dot_unchecked(&self.inference_weights(), x),
        };
        Ok(score)
    }
}

/// Runs `config.epochs` in-order passes over `data` from a fresh state.
pub fn train(config: &LearnerConfig, data: &Dataset) -> Result<Model> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut model = Model::new(config, data.dim())?;
    train_more(&mut model, data, config.epochs)?;
    Ok(model)
}

/// Continues training an existing model for `epochs` more passes. No shuffling.
pub fn train_more<L: OnlineLearner>(model: &mut L, data: &Dataset, epochs: usize) -> Result<()> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    check_dim(model.dim(), data.dim())?;
    for _ in 0..epochs {
        for ex in data {
            model.learn_one(ex)?;
        }
    }
    Ok(())
}
