//! Online linear classifiers with confidence-driven spike regularization.
//!
//! Four learners share one contract ([`OnlineLearner`]): the classic
//! perceptron, the averaged perceptron, AROW, and SPIRAL. SPIRAL is AROW
//! whose inputs are gated during training by clipped Gaussian samples
//! centred on the current weights, with variance equal to the item's
//! confidence relative to the largest confidence seen so far.
//!
//! Around the learners sits a small benchmark harness: IDX/CSV ingestion,
//! one-vs-rest digit tasks with an odd/even split, test-time feature
//! deletion sweeps, and a random-relabeling capacity estimate. Every random
//! choice flows from [`rng::RngStream`], so runs are bit-reproducible.

pub mod cli;
pub mod data;
pub mod error;
pub mod eval;
pub mod learners;
pub mod matrix;
pub mod model;
pub mod rng;
pub mod spike;
pub mod types;

pub use error::{Error, Result};
pub use learners::{
    train, train_more, Algorithm, ArowState, CovarianceForm, LearnerConfig, LinearClassifier, Model,
    OnlineLearner, PerceptronState, Predict, SpiralState,
};
pub use rng::RngStream;
pub use types::{dot, Dataset, Example, FeatureVector, Label};
