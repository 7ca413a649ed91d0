use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite feature value at index {index}")]
    NonFinite { index: usize },

    #[error("invalid label {0}: labels must be -1 or +1")]
    InvalidLabel(i64),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("no examples have been observed yet")]
    NoData,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("covariance is not positive semi-definite (confidence {0:e})")]
    NotPositiveSemiDefinite(f64),

    #[error("bad IDX magic: expected {expected:#010x}, found {found:#010x}")]
    BadMagic { expected: u32, found: u32 },

    #[error("truncated IDX data: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error("label byte {value} at index {index} is not a digit in 0..=9")]
    LabelOutOfRange { index: usize, value: u8 },

    #[error("malformed CSV dataset: {0}")]
    Csv(String),

    #[error("malformed model document: {0}")]
    Model(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
