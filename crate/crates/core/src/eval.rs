//! Experiment harness: feature-deletion robustness sweeps and
//! random-relabeling capacity estimates.
//!
//! Every random choice is derived from the master seed and a tag path
//! naming the cell it belongs to, so any single cell can be recomputed in
//! isolation and parallel execution never changes the output.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{check_keep_fraction, corrupt_keep, random_relabel, BinaryTask};
use crate::error::{Error, Result};
use crate::learners::{train, Algorithm, LearnerConfig, Model, Predict};
use crate::rng::{derive_seed, RngStream};
use crate::types::{check_dim, Dataset};

/// Error rate of a predictor that guesses fair random labels.
pub const RANDOM_BASELINE_ERROR: f64 = 0.5;

pub fn accuracy<P: Predict + ?Sized>(model: &P, test: &Dataset) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    check_dim(model.dim(), test.dim())?;
    let mut correct = 0usize;
    for ex in test {
        if model.predict(ex.features.as_slice())? == ex.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}

/// `(baseline − err) / baseline`.
pub fn error_reduction(err: f64, baseline: f64) -> Result<f64> {
    if baseline.is_nan() || baseline <= 0.0 {
        return Err(Error::InvalidArgument(format!("baseline error must be positive, got {baseline}")));
    }
    Ok((baseline - err) / baseline)
}

pub fn default_keep_grid() -> Vec<f64> {
    (1..=10).map(|i| f64::from(i) / 10.0).collect()
}

/// Parses `start:stop:step` (both ends inclusive within 1e−9) or a comma list.
pub fn parse_keep_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("invalid keep grid '{spec}'"));
    let grid = if spec.contains(':') {
        let parts: Vec<f64> =
            spec.split(':').map(|p| p.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        let [start, stop, step] = parts[..] else { return Err(bad()) };
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        // Round to 12 decimals so 0.1 + 2·0.1 prints as 0.3.
        (0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect()
    } else {
        spec.split(',').map(|p| p.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>().map_err(|_| bad())?
    };
    check_keep_grid(&grid)?;
    Ok(grid)
}

fn check_keep_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("keep grid is empty".into()));
    }
    for &k in grid {
        check_keep_fraction(k)?;
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("keep grid must be strictly ascending".into()));
    }
    Ok(())
}

/// Canonical short decimal used in seed tags and CSV-independent names.
pub fn keep_tag(keep_fraction: f64) -> String {
    let s = format!("{keep_fraction:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    format!("keep{s}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub algorithms: Vec<Algorithm>,
    pub keep_grid: Vec<f64>,
    pub repeats: usize,
    pub master_seed: u64,
    pub learner: LearnerConfig,
}

impl SweepConfig {
    pub const DEFAULT_REPEATS: usize = 5;

    pub fn new(algorithms: Vec<Algorithm>, master_seed: u64, learner: LearnerConfig) -> Self {
        SweepConfig {
            algorithms,
            keep_grid: default_keep_grid(),
            repeats: Self::DEFAULT_REPEATS,
            master_seed,
            learner,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::InvalidArgument("no algorithms requested".into()));
        }
        if self.repeats == 0 {
            return Err(Error::InvalidArgument("repeats must be at least 1".into()));
        }
        check_keep_grid(&self.keep_grid)?;
        self.learner.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub task: String,
    pub algorithm: Algorithm,
    pub keep_fraction: f64,
    pub repeat: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    /// Orders rows by (task, algorithm name, keep fraction, repeat).
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.task
                .cmp(&b.task)
                .then_with(|| a.algorithm.name().cmp(b.algorithm.name()))
                .then_with(|| a.keep_fraction.total_cmp(&b.keep_fraction))
                .then_with(|| a.repeat.cmp(&b.repeat))
        });
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "task,algorithm,keep_fraction,repeat,accuracy")?;
        for r in &self.rows {
            writeln!(w, "{},{},{:.6},{},{:.6}", r.task, r.algorithm, r.keep_fraction, r.repeat, r.accuracy)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    /// Mean accuracy over repeats for one (task, algorithm, keep) cell.
    pub fn mean_accuracy(&self, task: &str, algorithm: Algorithm, keep_fraction: f64) -> Option<f64> {
        let accs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.task == task && r.algorithm == algorithm && (r.keep_fraction - keep_fraction).abs() < 1e-9)
            .map(|r| r.accuracy)
            .collect();
        (!accs.is_empty()).then(|| accs.iter().sum::<f64>() / accs.len() as f64)
    }
}

/// Learner configuration for one (task, algorithm) pair, seeded from the master seed.
pub fn task_learner_config(cfg: &SweepConfig, task: &str, algorithm: Algorithm) -> LearnerConfig {
    let mut learner = cfg.learner.with_algorithm(algorithm);
    learner.seed = derive_seed(cfg.master_seed, &[task, algorithm.name(), "train"]);
    learner
}

/// Accuracy on `test` with every example independently corrupted.
///
/// Example `i` uses the stream derived from `[task, keep, rep, ex{i}]`, so
/// all algorithms see identical masks for the same cell.
pub fn corrupted_accuracy<P: Predict + ?Sized>(
    model: &P,
    test: &Dataset,
    task: &str,
    keep_fraction: f64,
    repeat: usize,
    master_seed: u64,
) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    check_dim(model.dim(), test.dim())?;
    let keep = keep_tag(keep_fraction);
    let rep = format!("rep{repeat}");
    let mut correct = 0usize;
    for (i, ex) in test.iter().enumerate() {
        let mut rng = RngStream::derive(master_seed, &[task, keep.as_str(), rep.as_str(), &format!("ex{i}")]);
        let x = corrupt_keep(ex.features.as_slice(), keep_fraction, &mut rng);
        if model.predict(&x)? == ex.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}

/// Trains each algorithm once per task on clean data, then scores every
/// (keep fraction, repeat) cell on freshly corrupted test inputs.
pub fn robustness_sweep(tasks: &[BinaryTask], cfg: &SweepConfig) -> Result<ResultTable> {
    if tasks.is_empty() {
        return Err(Error::InvalidArgument("no tasks to sweep".into()));
    }
    cfg.validate()?;

    let jobs: Vec<(&BinaryTask, Algorithm)> =
        tasks.iter().flat_map(|t| cfg.algorithms.iter().map(move |&a| (t, a))).collect();
    let models: Vec<(&BinaryTask, Algorithm, Model)> = jobs
        .into_par_iter()
        .map(|(task, algorithm)| {
            let model = train(&task_learner_config(cfg, &task.name, algorithm), &task.train)?;
            Ok((task, algorithm, model))
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::new();
    for (task, algorithm, model) in &models {
        let classifier = model.classifier();
        for &keep_fraction in &cfg.keep_grid {
            for repeat in 0..cfg.repeats {
                cells.push((*task, *algorithm, classifier.clone(), keep_fraction, repeat));
            }
        }
    }
    let rows = cells
        .into_par_iter()
        .map(|(task, algorithm, classifier, keep_fraction, repeat)| {
            let accuracy =
                corrupted_accuracy(&classifier, &task.test, &task.name, keep_fraction, repeat, cfg.master_seed)?;
            Ok(ResultRow { task: task.name.clone(), algorithm, keep_fraction, repeat, accuracy })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = ResultTable { rows };
    table.sort();
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RademacherEntry {
    pub mean_error: f64,
    pub error_reduction: f64,
    pub n_relabelings: usize,
}

/// Keyed by algorithm name.
pub type RademacherReport = BTreeMap<String, RademacherEntry>;

pub const DEFAULT_RELABELINGS: usize = 10;

/// Training error on random relabelings of `data`.
///
/// Relabeling `i` uses the stream derived from `["relabel", "rep{i}"]`, shared
/// across algorithms; each learner is then trained and scored on that same
/// relabeled set. Error reduction is taken against the 0.5 coin-flip baseline.
pub fn rademacher_estimate(
    learner: &LearnerConfig,
    data: &Dataset,
    n_relabelings: usize,
    master_seed: u64,
) -> Result<RademacherEntry> {
    if n_relabelings == 0 {
        return Err(Error::InvalidArgument("need at least one relabeling".into()));
    }
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    learner.validate()?;
    let errors = (0..n_relabelings)
        .into_par_iter()
        .map(|i| {
            let rep = format!("rep{i}");
            let relabeled = random_relabel(data, &mut RngStream::derive(master_seed, &["relabel", rep.as_str()]))?;
            let mut cfg = learner.clone();
            cfg.seed = derive_seed(master_seed, &[learner.algorithm.name(), rep.as_str(), "train"]);
            let model = train(&cfg, &relabeled)?;
            Ok(1.0 - accuracy(&model.classifier(), &relabeled)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean_error = errors.iter().sum::<f64>() / n_relabelings as f64;
    Ok(RademacherEntry {
        mean_error,
        error_reduction: error_reduction(mean_error, RANDOM_BASELINE_ERROR)?,
        n_relabelings,
    })
}
