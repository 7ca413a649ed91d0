//! Acceptance suite. Runs every exit criterion, prints one PASS/FAIL line
//! each, and exits non-zero if any criterion fails.
//!
//! MNIST criteria use the bundled 4000-item subset in `data/` (2000 train /
//! 2000 test per task after the odd/even split). Point `SPIRAL_MNIST_IMAGES`
//! and `SPIRAL_MNIST_LABELS` at other IDX files to run on those instead.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use spiral_core::data::{self, binary_task, make_binary_tasks, synth_blobs, RawMnist};
use spiral_core::eval::{rademacher_estimate, robustness_sweep, SweepConfig};
use spiral_core::learners::{ArowState, CovarianceForm, SpiralState};
use spiral_core::rng::RngStream;
use spiral_core::spike::sample_gate;
use spiral_core::{Algorithm, Dataset, Example, FeatureVector, Label, LearnerConfig, PerceptronState};

const MASTER_SEED: u64 = 20_160_101;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load_mnist() -> RawMnist {
    let (images, labels) = match (std::env::var_os("SPIRAL_MNIST_IMAGES"), std::env::var_os("SPIRAL_MNIST_LABELS")) {
        (Some(i), Some(l)) => (PathBuf::from(i), PathBuf::from(l)),
        _ => {
            let dir = workspace_root().join("data");
            (dir.join("mnist-subset-images-idx3-ubyte.gz"), dir.join("mnist-subset-labels-idx1-ubyte.gz"))
        }
    };
    RawMnist::load(&images, &labels).expect("MNIST IDX files")
}

fn random_example(rng: &mut RngStream, d: usize) -> Example {
    let x = (0..d).map(|_| rng.standard_normal()).collect();
    let y = if rng.next_bool() { Label::Pos } else { Label::Neg };
    Example::new(FeatureVector::new(x).unwrap(), y)
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

/// 1. SPIRAL with spikes disabled tracks AROW bit for bit.
fn disabled_spike_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = RngStream::new(MASTER_SEED);
    let mut steps = 0usize;
    for case in 0..100 {
        let d = 1 + rng.below(20) as usize;
        let n = 1 + rng.below(200) as usize;
        let mut spiral = SpiralState::new(d, 0.1, CovarianceForm::Standard, case, false, true).unwrap();
        let mut arow = ArowState::new(d, 0.1, CovarianceForm::Standard).unwrap();
        for _ in 0..n {
            let ex = random_example(&mut rng, d);
            spiral.learn_one(&ex).unwrap();
            arow.learn_one(&ex).unwrap();
            steps += 1;
            if bits(spiral.arow.mu()) != bits(arow.mu())
                || bits(spiral.arow.sigma().as_row_major()) != bits(arow.sigma().as_row_major())
            {
                return outcome(false, format!("dataset {case} diverged after {steps} total steps"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(10),
        format!("100 datasets, {steps} steps bitwise identical in {elapsed:.2?} (budget 10 s)"),
    )
}

/// Independent transcription of the AROW step with nested-Vec matrices and an
/// explicit `Σ·x·xᵀ·Σ` triple product.
fn oracle_arow_step(
    mu: &[f64],
    sigma: &[Vec<f64>],
    x: &[f64],
    y: f64,
    r: f64,
    literal: bool,
) -> (f64, Vec<f64>, Vec<Vec<f64>>) {
    let d = x.len();
    let mut sx = vec![0.0; d];
    for i in 0..d {
        for k in 0..d {
            sx[i] += sigma[i][k] * x[k];
        }
    }
    let conf: f64 = (0..d).map(|i| x[i] * sx[i]).sum();
    let margin: f64 = (0..d).map(|i| x[i] * mu[i]).sum();
    let alpha = (1.0 - y * margin).max(0.0) / (conf + r);
    let new_mu: Vec<f64> = (0..d).map(|i| mu[i] + alpha * y * sx[i]).collect();
    let mut xxt = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            xxt[i][j] = x[i] * x[j];
        }
    }
    let matmul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
        let mut c = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    };
    let sxxs = matmul(&matmul(&sigma.to_vec(), &xxt), &sigma.to_vec());
    let new_sigma = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if literal {
                        (sigma[i][j] - sxxs[i][j]) / (conf + r)
                    } else {
                        sigma[i][j] - sxxs[i][j] / (conf + r)
                    }
                })
                .collect()
        })
        .collect();
    (alpha, new_mu, new_sigma)
}

/// 2. One-step AROW from μ=0, Σ=I on x=e₁, y=+1, r=0.1.
fn one_step_oracle() -> Outcome {
    let tol = 1e-12;
    let d = 3;
    let x = vec![1.0, 0.0, 0.0];
    let id: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    let mut failures = Vec::new();
    for (form, literal) in [(CovarianceForm::Standard, false), (CovarianceForm::PaperLiteral, true)] {
        let (o_alpha, o_mu, o_sigma) = oracle_arow_step(&[0.0; 3], &id, &x, 1.0, 0.1, literal);
        let mut state = ArowState::new(d, 0.1, form).unwrap();
        let alpha = state.alpha(&x, Label::Pos).unwrap();
        state.learn_one(&Example::new(FeatureVector::new(x.clone()).unwrap(), Label::Pos)).unwrap();

        let hand_sigma: [f64; 3] = if literal { [0.0, 1.0 / 1.1, 1.0 / 1.1] } else { [1.0 - 1.0 / 1.1, 1.0, 1.0] };
        let mut check = |what: &str, got: f64, want: f64| {
            if (got - want).abs() > tol {
                failures.push(format!("{}: {what} = {got}, want {want}", form.name()));
            }
        };
        check("alpha (hand)", alpha, 1.0 / 1.1);
        check("alpha (oracle)", alpha, o_alpha);
        check("mu1 (hand)", state.mu()[0], 1.0 / 1.1);
        for i in 0..d {
            check("mu (oracle)", state.mu()[i], o_mu[i]);
            check("sigma diag (hand)", state.sigma().get(i, i), hand_sigma[i]);
            for j in 0..d {
                check("sigma (oracle)", state.sigma().get(i, j), o_sigma[i][j]);
                if i != j {
                    check("sigma off-diagonal", state.sigma().get(i, j), 0.0);
                }
            }
        }
    }

    // A generic random step too, so the oracle checks more than a diagonal case.
    let mut rng = RngStream::new(MASTER_SEED ^ 2);
    for form in [CovarianceForm::Standard, CovarianceForm::PaperLiteral] {
        let mut state = ArowState::new(4, 0.1, form).unwrap();
        for _ in 0..3 {
            let ex = random_example(&mut rng, 4);
            let x: Vec<f64> = ex.features.iter().map(|v| v * 0.3).collect();
            let ex = Example::new(FeatureVector::new(x.clone()).unwrap(), ex.label);
            let sigma: Vec<Vec<f64>> = (0..4).map(|i| state.sigma().row(i).to_vec()).collect();
            let mu = state.mu().to_vec();
            let (_, o_mu, o_sigma) =
                oracle_arow_step(&mu, &sigma, &x, ex.label.as_f64(), 0.1, form == CovarianceForm::PaperLiteral);
            let updated = state.learn_one(&ex).unwrap();
            if !updated {
                continue;
            }
            for i in 0..4 {
                if (state.mu()[i] - o_mu[i]).abs() > tol {
                    failures.push(format!("{}: random-step mu[{i}] off", form.name()));
                }
                for j in 0..4 {
                    if (state.sigma().get(i, j) - o_sigma[i][j]).abs() > tol {
                        failures.push(format!("{}: random-step sigma[{i}][{j}] off", form.name()));
                    }
                }
            }
        }
    }

    if failures.is_empty() {
        outcome(true, "alpha=1/1.1, mu1=1/1.1, sigma11=1-1/1.1 (standard) / 0 and 1/1.1 (paper-literal), within 1e-12 of hand values and the nested-loop oracle")
    } else {
        outcome(false, failures.join("; "))
    }
}

/// 3. Symmetry, PSD, and confidence shrinkage over 1000 random updates (d=10).
fn covariance_invariants(form: CovarianceForm) -> Outcome {
    let d = 10;
    let tol = 1e-9;
    let mut rng = RngStream::new(MASTER_SEED ^ 3);
    let mut probes = RngStream::new(MASTER_SEED ^ 33);
    let mut state = ArowState::new(d, 0.1, form).unwrap();
    let mut worst_asym = 0.0_f64;
    let mut worst_psd = f64::INFINITY;
    let mut updates = 0usize;
    let mut first_failure: Option<String> = None;
    for step in 0..1000 {
        let ex = random_example(&mut rng, d);
        let x = ex.features.as_slice();
        let before = state.sigma().quad_form(x).unwrap();
        if !state.learn_one(&ex).unwrap() {
            continue;
        }
        updates += 1;
        let sigma = state.sigma();
        let asym = sigma.max_relative_asymmetry();
        worst_asym = worst_asym.max(asym);
        if asym.is_nan() || asym >= tol {
            first_failure.get_or_insert(format!("step {step}: asymmetry {asym:e}"));
        }
        for _ in 0..20 {
            let z: Vec<f64> = (0..d).map(|_| probes.standard_normal()).collect();
            let norm2: f64 = z.iter().map(|v| v * v).sum();
            let q = sigma.quad_form(&z).unwrap();
            worst_psd = worst_psd.min(q / norm2);
            if !(q >= -tol * norm2) {
                first_failure.get_or_insert(format!("step {step}: probe zᵀΣz/‖z‖² = {:e}", q / norm2));
            }
        }
        if form == CovarianceForm::Standard {
            let after = sigma.quad_form(x).unwrap();
            if after > before + tol {
                first_failure.get_or_insert(format!("step {step}: confidence rose {before} -> {after}"));
            }
        }
    }
    let detail = format!(
        "{}: {updates} updates, max asymmetry {worst_asym:.1e}, min probe ratio {worst_psd:.3e}",
        form.name()
    );
    match first_failure {
        None => outcome(true, detail),
        Some(f) => outcome(false, format!("{detail}; first violation at {f}")),
    }
}

/// Simpson's rule for `E[clip(1−Z, 0, 1)] = ½ + ∫₀¹ (1−z) φ(z) dz`.
fn gate_mean_quadrature() -> f64 {
    let phi = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let n = 10_000;
    let h = 1.0 / n as f64;
    let f = |z: f64| (1.0 - z) * phi(z);
    let mut acc = f(0.0) + f(1.0);
    for i in 1..n {
        acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    0.5 + acc * h / 3.0
}

/// Monte Carlo with its own generator (64-bit LCG + polar Box–Muller),
/// independent of the crate's stream and gate code.
fn gate_mean_independent_mc(n: usize) -> f64 {
    let mut state: u64 = 0x2545_F491_4F6C_DD1D;
    let mut uniform = move || {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        ((state >> 11) as f64) / (1u64 << 53) as f64
    };
    let mut sum = 0.0;
    let mut count = 0;
    while count < n {
        let u = 2.0 * uniform() - 1.0;
        let v = 2.0 * uniform() - 1.0;
        let s = u * u + v * v;
        if s == 0.0 || s >= 1.0 {
            continue;
        }
        let k = (-2.0 * s.ln() / s).sqrt();
        for z in [u * k, v * k] {
            if count < n {
                sum += (1.0 - z).clamp(0.0, 1.0);
                count += 1;
            }
        }
    }
    sum / n as f64
}

/// 4. Mean gate with μ=0, ρ=1 (variance mode) over 10⁶ draws.
fn gate_statistic() -> Outcome {
    const TARGET: f64 = 0.68439;
    let analytic = gate_mean_quadrature();
    let independent = gate_mean_independent_mc(1_000_000);
    let start = Instant::now();
    let mut rng = RngStream::new(MASTER_SEED ^ 4);
    let n = 1_000_000;
    let sum: f64 = (0..n).map(|_| sample_gate(&[0.0], 1.0, &mut rng, true)[0]).sum();
    let mean = sum / n as f64;
    let elapsed = start.elapsed();
    let pass = (mean - TARGET).abs() <= 0.002
        && (analytic - TARGET).abs() <= 1e-4
        && (independent - TARGET).abs() <= 0.002
        && elapsed < Duration::from_secs(5);
    outcome(
        pass,
        format!(
            "mean gate {mean:.5} (target {TARGET} ± 0.002); quadrature {analytic:.5}; independent MC {independent:.5}; {elapsed:.2?} (budget 5 s)"
        ),
    )
}

/// 5. SPIRAL ≥ perceptron at every keep in 0.2..0.8 on at least 6 of 10 tasks.
fn robustness_reproduction(raw: &RawMnist) -> Outcome {
    let start = Instant::now();
    let tasks = make_binary_tasks(raw).unwrap();
    let mut cfg = SweepConfig::new(
        vec![Algorithm::Perceptron, Algorithm::Spiral],
        MASTER_SEED,
        LearnerConfig::new(Algorithm::Spiral, 0),
    );
    cfg.keep_grid = (1..=10).map(|i| f64::from(i) / 10.0).collect();
    cfg.repeats = 5;
    let table = robustness_sweep(&tasks, &cfg).unwrap();
    let mut wins = 0;
    let mut lines = Vec::new();
    for task in &tasks {
        let mut ok = true;
        let mut row = format!("    {:<7}", task.name);
        for i in 1..=10 {
            let k = f64::from(i) / 10.0;
            let p = table.mean_accuracy(&task.name, Algorithm::Perceptron, k).unwrap();
            let s = table.mean_accuracy(&task.name, Algorithm::Spiral, k).unwrap();
            if (2..=8).contains(&i) && s < p {
                ok = false;
            }
            row.push_str(&format!(" {k:.1}:{p:.3}/{s:.3}"));
        }
        wins += usize::from(ok);
        row.push_str(if ok { "  spiral>=perceptron" } else { "" });
        lines.push(row);
    }
    let elapsed = start.elapsed();
    println!("    per task, keep:perceptron/spiral mean accuracy over 5 mask repeats");
    for l in &lines {
        println!("{l}");
    }
    outcome(
        wins >= 6 && elapsed < Duration::from_secs(30 * 60),
        format!(
            "{} train / {} test per task; spiral >= perceptron at every keep in 0.2..0.8 on {wins}/10 tasks (need 6); {elapsed:.1?}",
            tasks[0].train.len(),
            tasks[0].test.len()
        ),
    )
}

/// 6. Random-relabel fitting on the digit-0 training split.
fn rademacher_ordering(raw: &RawMnist) -> Outcome {
    let start = Instant::now();
    let train = binary_task(raw, 0).unwrap().train;
    let perceptron = rademacher_estimate(&LearnerConfig::new(Algorithm::Perceptron, 0), &train, 10, MASTER_SEED).unwrap();
    let spiral = rademacher_estimate(&LearnerConfig::new(Algorithm::Spiral, 0), &train, 10, MASTER_SEED).unwrap();
    let gap = perceptron.error_reduction - spiral.error_reduction;
    let elapsed = start.elapsed();
    outcome(
        gap >= 0.02 && spiral.error_reduction < 0.03 && elapsed < Duration::from_secs(600),
        format!(
            "error reduction perceptron {:.2}% vs spiral {:.2}% (gap {:.2} pp, need >= 2; spiral need < 3%); {elapsed:.1?}",
            100.0 * perceptron.error_reduction,
            100.0 * spiral.error_reduction,
            100.0 * gap
        ),
    )
}

/// 7. IDX fixtures, error paths, and byte-exact serializer round trip.
fn idx_conformance() -> Outcome {
    let pixels: Vec<Vec<u8>> = vec![vec![0, 128, 255, 0], vec![1, 2, 3, 4], vec![255, 255, 0, 0], vec![9, 99, 199, 254]];
    let digits = [7u8, 0, 9, 3];
    let mut image_bytes = vec![0, 0, 8, 3, 0, 0, 0, 4, 0, 0, 0, 2, 0, 0, 0, 2];
    pixels.iter().for_each(|p| image_bytes.extend_from_slice(p));
    let mut label_bytes = vec![0, 0, 8, 1, 0, 0, 0, 4];
    label_bytes.extend_from_slice(&digits);

    let mut failures = Vec::new();
    match data::parse_idx_images(&image_bytes) {
        Ok(parsed) => {
            let want: Vec<Vec<f64>> =
                pixels.iter().map(|p| p.iter().map(|&b| f64::from(b) / 255.0).collect()).collect();
            if parsed.images != want || parsed.rows != 2 || parsed.cols != 2 {
                failures.push("image fixture decoded wrongly".to_string());
            }
            let back: Vec<Vec<u8>> =
                parsed.images.iter().map(|img| img.iter().map(|&p| (p * 255.0).round() as u8).collect()).collect();
            if data::write_idx_images(&back, 2, 2).unwrap() != image_bytes {
                failures.push("image round trip not byte-exact".into());
            }
        }
        Err(e) => failures.push(format!("image fixture rejected: {e}")),
    }
    match data::parse_idx_labels(&label_bytes) {
        Ok(l) => {
            if l != digits {
                failures.push("label fixture decoded wrongly".into());
            }
            if data::write_idx_labels(&l).unwrap() != label_bytes {
                failures.push("label round trip not byte-exact".into());
            }
        }
        Err(e) => failures.push(format!("label fixture rejected: {e}")),
    }
    use spiral_core::Error;
    if !matches!(data::parse_idx_images(&label_bytes), Err(Error::BadMagic { found: 0x801, .. })) {
        failures.push("wrong image magic not rejected".into());
    }
    if !matches!(data::parse_idx_labels(&image_bytes), Err(Error::BadMagic { found: 0x803, .. })) {
        failures.push("wrong label magic not rejected".into());
    }
    if !matches!(data::parse_idx_images(&image_bytes[..image_bytes.len() - 1]), Err(Error::Truncated { expected: 32, actual: 31 })) {
        failures.push("truncated images not rejected".into());
    }
    if !matches!(data::parse_idx_labels(&label_bytes[..10]), Err(Error::Truncated { expected: 12, actual: 10 })) {
        failures.push("truncated labels not rejected".into());
    }
    if !matches!(data::parse_idx_images(&[]), Err(Error::Truncated { .. })) {
        failures.push("empty input not rejected".into());
    }
    let mut bad = label_bytes.clone();
    bad[9] = 12;
    if !matches!(data::parse_idx_labels(&bad), Err(Error::LabelOutOfRange { index: 1, value: 12 })) {
        failures.push("out-of-range label not rejected".into());
    }

    // Larger random round trip.
    let mut rng = RngStream::new(MASTER_SEED ^ 7);
    let imgs: Vec<Vec<u8>> = (0..50).map(|_| (0..28 * 28).map(|_| rng.below(256) as u8).collect()).collect();
    let labs: Vec<u8> = (0..50).map(|_| rng.below(10) as u8).collect();
    let ib = data::write_idx_images(&imgs, 28, 28).unwrap();
    let lb = data::write_idx_labels(&labs).unwrap();
    let raw = RawMnist::from_idx_bytes(&ib, &lb).unwrap();
    let back: Vec<Vec<u8>> = raw.images().iter().map(|img| img.iter().map(|&p| (p * 255.0).round() as u8).collect()).collect();
    if back != imgs || raw.labels() != labs.as_slice() {
        failures.push("random 50-image round trip mismatch".into());
    }

    if failures.is_empty() {
        outcome(true, "4-image/4-label fixtures exact; bad magic, truncation, label 12 rejected; round trips byte-exact")
    } else {
        outcome(false, failures.join("; "))
    }
}

/// 8. `spiral sweep` twice with the same seed, serial and parallel, same bytes.
fn sweep_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_spiral");
    let dir = tempfile::tempdir().unwrap();
    let data_dir = workspace_root().join("data");
    let images = data_dir.join("mnist-subset-images-idx3-ubyte.gz");
    let labels = data_dir.join("mnist-subset-labels-idx1-ubyte.gz");
    let mut outputs = Vec::new();
    for (run, threads) in [(0, "1"), (1, "4"), (2, "0")] {
        let out = dir.path().join(format!("r{run}.csv"));
        let status = Command::new(bin)
            .args(["sweep", "--images"])
            .arg(&images)
            .arg("--labels")
            .arg(&labels)
            .args(["--limit", "600", "--tasks", "0,7", "--algos", "perceptron,arow,spiral"])
            .args(["--keep", "0.1:1.0:0.1", "--repeats", "3", "--seed", "7", "--threads", threads, "--out"])
            .arg(&out)
            .status()
            .unwrap();
        if !status.success() {
            return outcome(false, format!("sweep run {run} exited with {status}"));
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let rows = String::from_utf8_lossy(&outputs[0]).lines().count() - 1;
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        same && rows == 2 * 3 * 10 * 3,
        format!("3 runs (1, 4, all threads): {rows} rows, byte-identical = {same}"),
    )
}

fn separable_through_origin(data: &Dataset) -> bool {
    let steps = 36_000;
    (0..steps).any(|i| {
        let theta = std::f64::consts::TAU * i as f64 / steps as f64;
        let w = [theta.cos(), theta.sin()];
        data.iter().all(|ex| ex.label.as_f64() * (w[0] * ex.features[0] + w[1] * ex.features[1]) > 0.0)
    })
}

/// 9. Perceptron reaches an error-free pass on separable blobs within 50 epochs.
fn perceptron_convergence() -> Outcome {
    let data = synth_blobs(200, 2, 5.0, MASTER_SEED).unwrap();
    if !separable_through_origin(&data) {
        return outcome(false, "oracle found the blobs not separable");
    }
    let mut p = PerceptronState::new(2);
    for epoch in 1..=50 {
        let mut mistakes = 0;
        for ex in &data {
            mistakes += usize::from(p.learn_one(ex).unwrap());
        }
        if mistakes == 0 {
            return outcome(true, format!("separability confirmed by angle scan; error-free pass at epoch {epoch}"));
        }
    }
    outcome(false, "still making mistakes after 50 epochs")
}

fn main() {
    // libtest flags such as `--nocapture` or filters are accepted and ignored.
    let raw = load_mnist();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 disabled-spike equivalence", Box::new(disabled_spike_equivalence)),
        ("2 one-step AROW oracle", Box::new(one_step_oracle)),
        ("3a covariance invariants (standard)", Box::new(|| covariance_invariants(CovarianceForm::Standard))),
        ("3b covariance invariants (paper-literal)", Box::new(|| covariance_invariants(CovarianceForm::PaperLiteral))),
        ("4 gate statistic", Box::new(gate_statistic)),
        ("5 robustness reproduction", Box::new(|| robustness_reproduction(&raw))),
        ("6 rademacher ordering", Box::new(|| rademacher_ordering(&raw))),
        ("7 IDX conformance", Box::new(idx_conformance)),
        ("8 sweep determinism", Box::new(sweep_determinism)),
        ("9 perceptron convergence", Box::new(perceptron_convergence)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
