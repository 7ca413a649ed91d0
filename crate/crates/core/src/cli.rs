//! `spiral` command-line interface.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, parsing), 2 usage error.
//! Every option may also come from a JSON object passed with `--config`,
//! keyed by the long flag name with `-` replaced by `_`; flags win over the
//! file, and the file wins over built-in defaults.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::data::{self, binary_task, make_binary_tasks, synth_blobs, BinaryTask, RawMnist};
use crate::error::Error;
use crate::eval::{
    self, accuracy, corrupted_accuracy, parse_keep_grid, rademacher_estimate, robustness_sweep, RademacherReport,
    SweepConfig,
};
use crate::learners::{train, Algorithm, CovarianceForm, LearnerConfig, OnlineLearner};
use crate::model::{load_model, save_model};
use crate::types::Dataset;

const DEFAULT_ALGOS: &str = "perceptron,averaged-perceptron,arow,spiral";

#[derive(Debug, Parser)]
#[command(name = "spiral", version, about = "Online linear classifiers and robustness benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a two-blob synthetic dataset as CSV.
    Synth(SynthArgs),
    /// Train one learner and save it as JSON.
    Train(TrainArgs),
    /// Score a saved model, optionally with test-time feature deletion.
    Eval(EvalArgs),
    /// Accuracy versus fraction of features kept, per task and algorithm.
    Sweep(SweepArgs),
    /// Training error on random relabelings (capacity to fit noise).
    Rademacher(RademacherArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    separation: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// A CSV file, or an IDX image/label pair reduced to one digit-vs-rest task.
#[derive(Debug, Args)]
pub struct DataArgs {
    /// CSV dataset (`label,f0,f1,…`).
    #[arg(long)]
    data: Option<PathBuf>,
    /// IDX image file (optionally gzipped).
    #[arg(long)]
    images: Option<PathBuf>,
    /// IDX label file (optionally gzipped).
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Keep only the first N IDX items.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LearnerArgs {
    /// Smoothing constant for AROW and SPIRAL.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    /// `standard` or `paper-literal`.
    #[arg(long)]
    covariance_form: Option<CovarianceForm>,
    /// Run SPIRAL without input gating (identical to AROW).
    #[arg(long)]
    no_spike: bool,
    /// Interpret the spike spread as a `variance` or a `std-dev`.
    #[arg(long)]
    spike_scale: Option<SpikeScale>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpikeScale {
    Variance,
    StdDev,
}

impl FromStr for SpikeScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "variance" => Ok(SpikeScale::Variance),
            "std-dev" => Ok(SpikeScale::StdDev),
            other => Err(format!("unknown spike scale '{other}' (valid: variance, std-dev)")),
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    algo: Option<Algorithm>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    data: DataArgs,
    /// Digit for the one-vs-rest task when training from IDX (train split).
    #[arg(long)]
    digit: Option<u8>,
    #[command(flatten)]
    learner: LearnerArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[command(flatten)]
    data: DataArgs,
    /// Digit for the one-vs-rest task when scoring IDX data (test split).
    #[arg(long)]
    digit: Option<u8>,
    #[arg(long)]
    keep_fraction: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated algorithm names.
    #[arg(long)]
    algos: Option<String>,
    /// `start:stop:step` or a comma list of keep fractions.
    #[arg(long)]
    keep: Option<String>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated digits to restrict the IDX tasks.
    #[arg(long)]
    tasks: Option<String>,
    #[command(flatten)]
    learner: LearnerArgs,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RademacherArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Digit task whose training split is relabeled (IDX input).
    #[arg(long)]
    digit: Option<u8>,
    #[arg(long)]
    algos: Option<String>,
    #[arg(long)]
    relabelings: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    learner: LearnerArgs,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Runtime(e) => write!(f, "error: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Values loaded from `--config`.
#[derive(Debug, Default)]
struct FileConfig(Map<String, Value>);

impl FileConfig {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else { return Ok(FileConfig::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        match serde_json::from_str::<Value>(&text).map_err(Error::from)? {
            Value::Object(map) => Ok(FileConfig(map)),
            _ => usage(format!("{}: config must be a JSON object", path.display())),
        }
    }

    fn get<T: DeserializeOwned>(&self, key: &str) -> CliResult<Option<T>> {
        match self.0.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))),
        }
    }

    fn get_parsed<T: FromStr<Err = String>>(&self, key: &str) -> CliResult<Option<T>> {
        match self.get::<String>(key)? {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))),
        }
    }

    fn pick<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    fn pick_parsed<T: FromStr<Err = String>>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get_parsed(key),
        }
    }

    fn require<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.pick(flag, key)?.map_or_else(|| usage(format!("--{} is required", key.replace('_', "-"))), Ok)
    }

    fn seed(&self, flag: Option<u64>) -> CliResult<u64> {
        self.pick(flag, "seed")?.map_or_else(|| usage("--seed is required (runs are never unseeded)"), Ok)
    }
}

fn learner_config(
    algorithm: Algorithm,
    seed: u64,
    args: &LearnerArgs,
    file: &FileConfig,
) -> CliResult<LearnerConfig> {
    let mut cfg = LearnerConfig::new(algorithm, seed);
    if let Some(r) = file.pick(args.r, "r")? {
        cfg.r = r;
    }
    if let Some(epochs) = file.pick(args.epochs, "epochs")? {
        cfg.epochs = epochs;
    }
    if let Some(form) = file.pick_parsed(args.covariance_form, "covariance_form")? {
        cfg.covariance_form = form;
    }
    let no_spike = args.no_spike || file.get::<bool>("no_spike")?.unwrap_or(false);
    cfg.spike_enabled = !no_spike;
    if let Some(scale) = file.pick_parsed(args.spike_scale, "spike_scale")? {
        cfg.spike_scale_is_variance = scale == SpikeScale::Variance;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

fn parse_algos(spec: &str) -> CliResult<Vec<Algorithm>> {
    let algos = spec
        .split(',')
        .map(|s| s.trim().parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Usage)?;
    if algos.is_empty() {
        return usage("no algorithms given");
    }
    Ok(algos)
}

enum Source {
    Csv(Dataset),
    Idx(RawMnist),
}

fn load_source(args: &DataArgs, file: &FileConfig) -> CliResult<Source> {
    let data: Option<PathBuf> = file.pick(args.data.clone(), "data")?;
    let images: Option<PathBuf> = file.pick(args.images.clone(), "images")?;
    let labels: Option<PathBuf> = file.pick(args.labels.clone(), "labels")?;
    let limit: Option<usize> = file.pick(args.limit, "limit")?;
    match (data, images, labels) {
        (Some(path), None, None) => Ok(Source::Csv(data::read_csv_dataset(&path)?)),
        (None, Some(images), Some(labels)) => {
            let mut raw = RawMnist::load(&images, &labels)?;
            if let Some(n) = limit {
                raw.truncate(n);
            }
            Ok(Source::Idx(raw))
        }
        _ => usage("give either --data <csv> or both --images and --labels"),
    }
}

fn digit_task(raw: &RawMnist, digit: Option<u8>) -> CliResult<BinaryTask> {
    let digit = digit.unwrap_or(0);
    if digit > 9 {
        return usage(format!("--digit must be in 0..=9, got {digit}"));
    }
    Ok(binary_task(raw, digit)?)
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::io(path, e).into()),
        None => std::io::stdout().write_all(bytes).map_err(|e| Error::io("<stdout>", e).into()),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(job)
}

fn cmd_synth(args: SynthArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let n: usize = file.require(args.n, "n")?;
    let d: usize = file.require(args.d, "d")?;
    let separation: f64 = file.require(args.separation, "separation")?;
    let seed = file.seed(args.seed)?;
    let out: PathBuf = file.require(args.out, "out")?;
    if n == 0 || n % 2 != 0 {
        return usage(format!("--n must be a positive even number, got {n}"));
    }
    if d == 0 {
        return usage("--d must be at least 1");
    }
    let data = synth_blobs(n, d, separation, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    data::write_csv_dataset(&out, &data)?;
    Ok(())
}

fn cmd_train(args: TrainArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let algorithm = file
        .pick_parsed(args.algo, "algo")?
        .map_or_else(|| usage("--algo is required"), Ok)?;
    let seed = file.seed(args.seed)?;
    let out: PathBuf = file.require(args.out, "out")?;
    let cfg = learner_config(algorithm, seed, &args.learner, &file)?;
    let train_set = match load_source(&args.data, &file)? {
        Source::Csv(d) => d,
        Source::Idx(raw) => digit_task(&raw, file.pick(args.digit, "digit")?)?.train,
    };
    let model = train(&cfg, &train_set)?;
    save_model(&out, &model, &cfg)?;
    println!("train_accuracy={:.6}", accuracy(&model.classifier(), &train_set)?);
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let model_path: PathBuf = file.require(args.model, "model")?;
    let keep: Option<f64> = file.pick(args.keep_fraction, "keep_fraction")?;
    let (model, _) = load_model(&model_path)?;
    let test = match load_source(&args.data, &file)? {
        Source::Csv(d) => d,
        Source::Idx(raw) => digit_task(&raw, file.pick(args.digit, "digit")?)?.test,
    };
    if model.dim() != test.dim() {
        return Err(Error::InvalidArgument(format!(
            "model has dimension {} but dataset has dimension {}",
            model.dim(),
            test.dim()
        ))
        .into());
    }
    let classifier = model.classifier();
    let acc = match keep {
        None => accuracy(&classifier, &test)?,
        Some(k) => {
            data::check_keep_fraction(k).map_err(|e| CliError::Usage(e.to_string()))?;
            let seed = file.seed(args.seed)?;
            corrupted_accuracy(&classifier, &test, "eval", k, 0, seed)?
        }
    };
    println!("accuracy={acc:.6}");
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let seed = file.seed(args.seed)?;
    let algos = parse_algos(&file.pick(args.algos, "algos")?.unwrap_or_else(|| DEFAULT_ALGOS.into()))?;
    let learner = learner_config(algos[0], seed, &args.learner, &file)?;
    let mut cfg = SweepConfig::new(algos, seed, learner);
    if let Some(keep) = file.pick::<String>(args.keep, "keep")? {
        cfg.keep_grid = parse_keep_grid(&keep).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(repeats) = file.pick(args.repeats, "repeats")? {
        cfg.repeats = repeats;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let tasks_filter: Option<String> = file.pick(args.tasks, "tasks")?;
    let tasks = match load_source(&args.data, &file)? {
        Source::Csv(d) => {
            if tasks_filter.is_some() {
                return usage("--tasks only applies to IDX input");
            }
            vec![BinaryTask::from_dataset(&d)?]
        }
        Source::Idx(raw) => match tasks_filter {
            None => make_binary_tasks(&raw)?,
            Some(list) => list
                .split(',')
                .map(|t| match t.trim().parse::<u8>() {
                    Ok(d) if d <= 9 => Ok(binary_task(&raw, d)?),
                    _ => usage(format!("invalid task digit '{t}'")),
                })
                .collect::<CliResult<Vec<_>>>()?,
        },
    };
    let threads = file.pick(args.threads, "threads")?;
    let table = with_threads(threads, || Ok(robustness_sweep(&tasks, &cfg)?))?;
    write_output(file.pick(args.out, "out")?.as_deref(), table.to_csv_string().as_bytes())
}

fn cmd_rademacher(args: RademacherArgs) -> CliResult<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let seed = file.seed(args.seed)?;
    let algos = parse_algos(&file.pick(args.algos, "algos")?.unwrap_or_else(|| DEFAULT_ALGOS.into()))?;
    let n: usize = file.pick(args.relabelings, "relabelings")?.unwrap_or(eval::DEFAULT_RELABELINGS);
    if n == 0 {
        return usage("--relabelings must be at least 1");
    }
    let train_set = match load_source(&args.data, &file)? {
        Source::Csv(d) => BinaryTask::from_dataset(&d)?.train,
        Source::Idx(raw) => digit_task(&raw, file.pick(args.digit, "digit")?)?.train,
    };
    let threads = file.pick(args.threads, "threads")?;
    let mut report = RademacherReport::new();
    for algorithm in algos {
        let cfg = learner_config(algorithm, seed, &args.learner, &file)?;
        let entry = with_threads(threads, || Ok(rademacher_estimate(&cfg, &train_set, n, seed)?))?;
        report.insert(algorithm.name().to_string(), entry);
    }
    let json = serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n";
    write_output(file.pick(args.out, "out")?.as_deref(), json.as_bytes())
}

pub fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Train(a) => cmd_train(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Rademacher(a) => cmd_rademacher(a),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
