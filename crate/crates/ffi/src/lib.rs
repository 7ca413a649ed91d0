//! C ABI over `spiral-core`.
//!
//! Models and datasets are opaque heap handles created by `spiral_*_new`,
//! `spiral_train`, or the loaders, and released with the matching `_free`.
//! Every call returns a [`SpiralStatus`]; on failure the message for the
//! calling thread is available from [`spiral_last_error`]. Panics are caught
//! at the boundary and reported as `SPIRAL_STATUS_PANIC`.
//!
//! The generated header lives at `include/spiral.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use spiral_core::data::read_csv_dataset;
use spiral_core::eval::accuracy;
use spiral_core::model::{load_model, save_model, ModelDocument};
use spiral_core::{
    Algorithm, CovarianceForm, Dataset, Error, Example, FeatureVector, Label, LearnerConfig, Model, OnlineLearner,
    Predict,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpiralStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InvalidLabel = 4,
    EmptyDataset = 5,
    Numeric = 6,
    Io = 7,
    Parse = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpiralAlgorithm {
    Perceptron = 0,
    AveragedPerceptron = 1,
    Arow = 2,
    Spiral = 3,
    Constant = 4,
}

impl From<SpiralAlgorithm> for Algorithm {
    fn from(a: SpiralAlgorithm) -> Self {
        match a {
            SpiralAlgorithm::Perceptron => Algorithm::Perceptron,
            SpiralAlgorithm::AveragedPerceptron => Algorithm::AveragedPerceptron,
            SpiralAlgorithm::Arow => Algorithm::Arow,
            SpiralAlgorithm::Spiral => Algorithm::Spiral,
            SpiralAlgorithm::Constant => Algorithm::Constant,
        }
    }
}

impl From<Algorithm> for SpiralAlgorithm {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Perceptron => SpiralAlgorithm::Perceptron,
            Algorithm::AveragedPerceptron => SpiralAlgorithm::AveragedPerceptron,
            Algorithm::Arow => SpiralAlgorithm::Arow,
            Algorithm::Spiral => SpiralAlgorithm::Spiral,
            Algorithm::Constant => SpiralAlgorithm::Constant,
        }
    }
}

/// Learner settings. Start from [`spiral_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralConfig {
    pub algorithm: SpiralAlgorithm,
    /// AROW/SPIRAL smoothing constant, must be positive.
    pub r: f64,
    pub epochs: u32,
    pub seed: u64,
    /// `Σ ← (Σ − Σ·x·xᵀ·Σ) / (c + r)` instead of `Σ ← Σ − Σ·x·xᵀ·Σ / (c + r)`.
    /// Not guaranteed to stay positive semi-definite.
    pub paper_literal_covariance: bool,
    pub spike_enabled: bool,
    /// `true`: confidence ratio is the gate variance; `false`: its std-dev.
    pub spike_scale_is_variance: bool,
}

impl From<&SpiralConfig> for LearnerConfig {
    fn from(c: &SpiralConfig) -> Self {
        let mut cfg = LearnerConfig::new(c.algorithm.into(), c.seed);
        cfg.r = c.r;
        cfg.epochs = c.epochs as usize;
        cfg.covariance_form =
            if c.paper_literal_covariance { CovarianceForm::PaperLiteral } else { CovarianceForm::Standard };
        cfg.spike_enabled = c.spike_enabled;
        cfg.spike_scale_is_variance = c.spike_scale_is_variance;
        cfg
    }
}

impl From<&LearnerConfig> for SpiralConfig {
    fn from(c: &LearnerConfig) -> Self {
        SpiralConfig {
            algorithm: c.algorithm.into(),
            r: c.r,
            epochs: u32::try_from(c.epochs).unwrap_or(u32::MAX),
            seed: c.seed,
            paper_literal_covariance: c.covariance_form == CovarianceForm::PaperLiteral,
            spike_enabled: c.spike_enabled,
            spike_scale_is_variance: c.spike_scale_is_variance,
        }
    }
}

/// Opaque trained or in-progress model.
pub struct SpiralModel {
    model: Model,
    config: LearnerConfig,
}

/// Opaque labelled dataset.
pub struct SpiralDataset {
    data: Dataset,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SpiralStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. } => SpiralStatus::DimensionMismatch,
            Error::InvalidLabel(_) => SpiralStatus::InvalidLabel,
            Error::EmptyDataset | Error::NoData => SpiralStatus::EmptyDataset,
            Error::NonFinite { .. } | Error::NotPositiveSemiDefinite(_) => SpiralStatus::Numeric,
            Error::Io { .. } => SpiralStatus::Io,
            Error::BadMagic { .. }
            | Error::Truncated { .. }
            | Error::LabelOutOfRange { .. }
            | Error::Csv(_)
            | Error::Model(_)
            | Error::Json(_) => SpiralStatus::Parse,
            _ => SpiralStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SpiralStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpiralStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SpiralStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            SpiralStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(x: *const f64, len: usize) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if x.is_null() {
        return Err(null("x"));
    }
    Ok(std::slice::from_raw_parts(x, len))
}

unsafe fn path<'a>(p: *const c_char) -> Result<&'a Path, Failure> {
    let s = as_ref(p, "path")?;
    let s = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(SpiralStatus::InvalidArgument, "path is not valid UTF-8".into()))?;
    Ok(Path::new(s))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn example(x: &[f64], label: i32) -> Result<Example, Failure> {
    let label = Label::from_i64(i64::from(label))?;
    Ok(Example::new(FeatureVector::new(x.to_vec())?, label))
}

/// Message for the last failed call on this thread, or `""`. The pointer is
/// valid until the next `spiral_*` call on the same thread.
#[no_mangle]
pub extern "C" fn spiral_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Default settings for `algorithm` (r = 0.1, one epoch, standard
/// covariance update, spikes on, variance scale).
#[no_mangle]
pub extern "C" fn spiral_config_default(algorithm: SpiralAlgorithm, seed: u64) -> SpiralConfig {
    SpiralConfig::from(&LearnerConfig::new(algorithm.into(), seed))
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_new(dim: usize, out: *mut *mut SpiralDataset) -> SpiralStatus {
    guard(|| put(out, SpiralDataset { data: Dataset::new("ffi", dim)? }))
}

/// Appends one example; `label` must be -1 or +1.
///
/// # Safety
/// `ds` must be a live dataset handle and `x` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_push(
    ds: *mut SpiralDataset,
    x: *const f64,
    len: usize,
    label: i32,
) -> SpiralStatus {
    guard(|| {
        let ds = as_mut(ds, "dataset")?;
        ds.data.push(example(slice(x, len)?, label)?)?;
        Ok(())
    })
}

/// Loads a `label,f0,f1,…` CSV file.
///
/// # Safety
/// `file_path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_load_csv(file_path: *const c_char, out: *mut *mut SpiralDataset) -> SpiralStatus {
    guard(|| put(out, SpiralDataset { data: read_csv_dataset(path(file_path)?)? }))
}

/// Number of examples, or 0 for a null handle.
///
/// # Safety
/// `ds` must be null or a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_len(ds: *const SpiralDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.data.len())
}

/// Feature dimension, or 0 for a null handle.
///
/// # Safety
/// `ds` must be null or a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_dim(ds: *const SpiralDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.data.dim())
}

/// # Safety
/// `ds` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spiral_dataset_free(ds: *mut SpiralDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Untrained model of dimension `dim`.
///
/// # Safety
/// `config` must point to a valid config and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_new(
    config: *const SpiralConfig,
    dim: usize,
    out: *mut *mut SpiralModel,
) -> SpiralStatus {
    guard(|| {
        let config = LearnerConfig::from(as_ref(config, "config")?);
        if dim == 0 {
            return Err(Failure(SpiralStatus::InvalidArgument, "dimension must be positive".into()));
        }
        put(out, SpiralModel { model: Model::new(&config, dim)?, config })
    })
}

/// Trains a fresh model for `config.epochs` passes over `ds`.
///
/// # Safety
/// `config` and `ds` must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_train(
    config: *const SpiralConfig,
    ds: *const SpiralDataset,
    out: *mut *mut SpiralModel,
) -> SpiralStatus {
    guard(|| {
        let config = LearnerConfig::from(as_ref(config, "config")?);
        let ds = as_ref(ds, "dataset")?;
        put(out, SpiralModel { model: spiral_core::train(&config, &ds.data)?, config })
    })
}

/// One online step.
///
/// # Safety
/// `model` must be live and `x` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_learn_one(
    model: *mut SpiralModel,
    x: *const f64,
    len: usize,
    label: i32,
) -> SpiralStatus {
    guard(|| {
        let m = as_mut(model, "model")?;
        m.model.learn_one(&example(slice(x, len)?, label)?)?;
        Ok(())
    })
}

/// Raw score `w·x` with the model's inference weights.
///
/// # Safety
/// `model` must be live, `x` must point to `len` doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_score(
    model: *const SpiralModel,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> SpiralStatus {
    guard(|| {
        let m = as_ref(model, "model")?;
        let out = as_mut(out, "out")?;
        *out = m.model.score(slice(x, len)?)?;
        Ok(())
    })
}

/// Predicted label, -1 or +1 (a zero score predicts +1).
///
/// # Safety
/// `model` must be live, `x` must point to `len` doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_predict(
    model: *const SpiralModel,
    x: *const f64,
    len: usize,
    out: *mut i32,
) -> SpiralStatus {
    guard(|| {
        let m = as_ref(model, "model")?;
        let out = as_mut(out, "out")?;
        *out = i32::from(m.model.predict(slice(x, len)?)?.as_i8());
        Ok(())
    })
}

/// Model dimension, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_dim(model: *const SpiralModel) -> usize {
    model.as_ref().map_or(0, |m| OnlineLearner::dim(&m.model))
}

/// Copies the settings the model was built with.
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_config(model: *const SpiralModel, out: *mut SpiralConfig) -> SpiralStatus {
    guard(|| {
        *as_mut(out, "out")? = SpiralConfig::from(&as_ref(model, "model")?.config);
        Ok(())
    })
}

/// Copies the inference weights into `out`, which must hold exactly `dim`.
///
/// # Safety
/// `model` must be live and `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_weights(model: *const SpiralModel, out: *mut f64, len: usize) -> SpiralStatus {
    guard(|| {
        let w = as_ref(model, "model")?.model.inference_weights();
        if len != w.len() {
            return Err(Error::DimensionMismatch { expected: w.len(), found: len }.into());
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&w);
        Ok(())
    })
}

/// Fraction of `ds` classified correctly.
///
/// # Safety
/// `model` and `ds` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_accuracy(
    model: *const SpiralModel,
    ds: *const SpiralDataset,
    out: *mut f64,
) -> SpiralStatus {
    guard(|| {
        let m = as_ref(model, "model")?;
        let ds = as_ref(ds, "dataset")?;
        *as_mut(out, "out")? = accuracy(&m.model, &ds.data)?;
        Ok(())
    })
}

/// Serializes to the JSON model document. Release with [`spiral_string_free`].
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_to_json(model: *const SpiralModel, out: *mut *mut c_char) -> SpiralStatus {
    guard(|| {
        let m = as_ref(model, "model")?;
        let out = as_mut(out, "out")?;
        let json = ModelDocument::from_model(&m.model, &m.config).to_json()?;
        *out = CString::new(json).map_err(|e| Failure(SpiralStatus::Parse, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_from_json(json: *const c_char, out: *mut *mut SpiralModel) -> SpiralStatus {
    guard(|| {
        let text = CStr::from_ptr(as_ref(json, "json")?)
            .to_str()
            .map_err(|_| Failure(SpiralStatus::Parse, "model JSON is not valid UTF-8".into()))?;
        let (model, config) = ModelDocument::from_json(text)?.into_model()?;
        put(out, SpiralModel { model, config })
    })
}

/// # Safety
/// `model` must be live and `file_path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_save(model: *const SpiralModel, file_path: *const c_char) -> SpiralStatus {
    guard(|| {
        let m = as_ref(model, "model")?;
        save_model(path(file_path)?, &m.model, &m.config)?;
        Ok(())
    })
}

/// # Safety
/// `file_path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_load(file_path: *const c_char, out: *mut *mut SpiralModel) -> SpiralStatus {
    guard(|| {
        let (model, config) = load_model(path(file_path)?)?;
        put(out, SpiralModel { model, config })
    })
}

/// # Safety
/// `model` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spiral_model_free(model: *mut SpiralModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from [`spiral_model_to_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spiral_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spiral_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
