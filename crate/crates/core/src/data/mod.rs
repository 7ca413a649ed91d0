//! Dataset ingestion, task construction, and corruption.

pub mod csv;
pub mod idx;

use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::types::{Dataset, Example, FeatureVector, Label};

pub use self::csv::{read_csv_dataset, write_csv_dataset};
pub use self::idx::{parse_idx_images, parse_idx_labels, write_idx_images, write_idx_labels};

/// Number of one-vs-rest digit tasks.
pub const NUM_DIGIT_TASKS: usize = 10;

/// Images scaled to `[0, 1]` with their digit labels.
#[derive(Debug, Clone, PartialEq)]
pub struct RawMnist {
    dim: usize,
    images: Vec<Vec<f64>>,
    labels: Vec<u8>,
}

impl RawMnist {
    pub fn new(images: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        if images.len() != labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images but {} labels",
                images.len(),
                labels.len()
            )));
        }
        let dim = images.first().map_or(0, Vec::len);
        for img in &images {
            if img.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: img.len() });
            }
            if img.iter().any(|p| !(0.0..=1.0).contains(p)) {
                return Err(Error::InvalidArgument("pixel outside [0, 1]".into()));
            }
        }
        if let Some(index) = labels.iter().position(|&l| l > 9) {
            return Err(Error::LabelOutOfRange { index, value: labels[index] });
        }
        Ok(RawMnist { dim, images, labels })
    }

    pub fn from_idx_bytes(images: &[u8], labels: &[u8]) -> Result<Self> {
        let images = parse_idx_images(images)?;
        RawMnist::new(images.images, parse_idx_labels(labels)?)
    }

    /// Loads an image/label IDX pair; gzip-compressed files are accepted.
    pub fn load(images: &Path, labels: &Path) -> Result<Self> {
        RawMnist::from_idx_bytes(&idx::read_maybe_gzip(images)?, &idx::read_maybe_gzip(labels)?)
    }

    /// Keeps the first `n` items in file order.
    pub fn truncate(&mut self, n: usize) {
        self.images.truncate(n);
        self.labels.truncate(n);
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Vec<f64>] {
        &self.images
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }
}

/// One binary problem with a fixed train/test split.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryTask {
    pub name: String,
    pub digit: Option<u8>,
    pub train: Dataset,
    pub test: Dataset,
}

impl BinaryTask {
    /// Splits an already-labeled dataset by position parity.
    pub fn from_dataset(data: &Dataset) -> Result<Self> {
        let (train, test) = split_odd_even(data)?;
        Ok(BinaryTask { name: data.name().to_string(), digit: None, train, test })
    }
}

/// Odd 0-based positions go to the first (train) set, even positions to the
/// second (test) set. Order within each half is preserved.
pub fn split_odd_even(data: &Dataset) -> Result<(Dataset, Dataset)> {
    let mut train = Dataset::new(format!("{}-train", data.name()), data.dim())?;
    let mut test = Dataset::new(format!("{}-test", data.name()), data.dim())?;
    for (i, ex) in data.iter().enumerate() {
        if i % 2 == 1 {
            train.push(ex.clone())?;
        } else {
            test.push(ex.clone())?;
        }
    }
    Ok((train, test))
}

/// Digit `digit` versus the rest, split odd (train) / even (test).
pub fn binary_task(raw: &RawMnist, digit: u8) -> Result<BinaryTask> {
    if raw.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if digit > 9 {
        return Err(Error::InvalidArgument(format!("digit must be in 0..=9, got {digit}")));
    }
    let name = format!("digit{digit}");
    let mut train = Dataset::new(format!("{name}-train"), raw.dim())?;
    let mut test = Dataset::new(format!("{name}-test"), raw.dim())?;
    for (i, (img, &lab)) in raw.images.iter().zip(&raw.labels).enumerate() {
        let label = if lab == digit { Label::Pos } else { Label::Neg };
        let ex = Example::new(FeatureVector::new(img.clone())?, label);
        if i % 2 == 1 {
            train.push(ex)?;
        } else {
            test.push(ex)?;
        }
    }
    Ok(BinaryTask { name, digit: Some(digit), train, test })
}

/// The ten one-vs-rest tasks, ordered by digit.
pub fn make_binary_tasks(raw: &RawMnist) -> Result<Vec<BinaryTask>> {
    (0..NUM_DIGIT_TASKS as u8).map(|d| binary_task(raw, d)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorruptionSpec {
    pub keep_fraction: f64,
    pub seed: u64,
}

impl CorruptionSpec {
    pub fn new(keep_fraction: f64, seed: u64) -> Result<Self> {
        check_keep_fraction(keep_fraction)?;
        Ok(CorruptionSpec { keep_fraction, seed })
    }
}

pub fn check_keep_fraction(keep_fraction: f64) -> Result<()> {
    if keep_fraction > 0.0 && keep_fraction <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("keep fraction must be in (0, 1], got {keep_fraction}")))
    }
}

/// Number of surviving features: `round(keep·d)`, at least one.
pub fn kept_count(keep_fraction: f64, dim: usize) -> usize {
    ((keep_fraction * dim as f64).round() as usize).clamp(1.min(dim), dim)
}

/// Zeroes all but `kept_count` uniformly chosen coordinates.
///
/// The surviving indices are the first `k` slots of a partial Fisher–Yates
/// shuffle of `0..d`, where slot `i` swaps with `i + below(d − i)`.
/// A keep fraction of 1 returns `x` without touching the stream.
pub fn corrupt_keep(x: &[f64], keep_fraction: f64, rng: &mut RngStream) -> Vec<f64> {
    let d = x.len();
    let k = kept_count(keep_fraction, d);
    if k >= d {
        return x.to_vec();
    }
    let mut idx: Vec<usize> = (0..d).collect();
    for i in 0..k {
        let j = i + rng.below((d - i) as u64) as usize;
        idx.swap(i, j);
    }
    let mut out = vec![0.0; d];
    for &i in &idx[..k] {
        out[i] = x[i];
    }
    out
}

/// `n/2` points from `N(+sep·e₁, I)` labeled +1 and `n/2` from `N(−sep·e₁, I)`
/// labeled −1, interleaved starting with +1.
pub fn synth_blobs(n: usize, d: usize, separation: f64, seed: u64) -> Result<Dataset> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("n must be a positive even number, got {n}")));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if !separation.is_finite() {
        return Err(Error::InvalidArgument(format!("separation must be finite, got {separation}")));
    }
    let mut rng = RngStream::new(seed);
    let mut data = Dataset::new(format!("blobs-n{n}-d{d}"), d)?;
    for i in 0..n {
        let label = if i % 2 == 0 { Label::Pos } else { Label::Neg };
        let mut x: Vec<f64> = (0..d).map(|_| rng.standard_normal()).collect();
        x[0] += label.as_f64() * separation;
        data.push(Example::new(FeatureVector::new(x)?, label))?;
    }
    Ok(data)
}

/// Replaces every label with an independent fair coin flip.
pub fn random_relabel(data: &Dataset, rng: &mut RngStream) -> Result<Dataset> {
    let labels: Vec<Label> =
        (0..data.len()).map(|_| if rng.next_bool() { Label::Pos } else { Label::Neg }).collect();
    data.with_labels(labels)
}
