//! Command-line front end. Every subcommand accepts `--config FILE` with
//! `key = value` lines whose keys match the long flag names; flags given on
//! the command line override the file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::config::{Algorithm, Ensemble, LPolicy, Settings, SweepConfig};
use super::output::{grid_metadata, grid_to_csv, heatmap, matrix_image, matrix_to_csv, write_text};
use super::sweep::{best_l_search, l_sensitivity, phase_diagram, wavelet_experiment, LSensitivityConfig, SweepGrid, WaveletConfig};
use super::{filtered_haar_matrix, CellStatus};
use crate::error::Error;
use crate::linalg::DenseMatrix;
use crate::recovery::{cosamp, default_max_iterations, partinv, partinv_wavelet, PartInvOptions};
use crate::sensing::{
    correlated_block_matrix, correlation_map, gaussian_matrix, random_sparse_signal, read_dmat, read_vector,
    write_vector, CorrelatedBlockParams, RngStream,
};
use crate::theory::{
    check_all, construct_theorem_instance_with, default_a_bound, CheckMode, EXHAUSTIVE_MAX_L, EXHAUSTIVE_MAX_N,
};
use crate::wavelet::tree_partition;

/// Environment variable capping the worker count (`0` or unset = all cores).
pub const THREADS_ENV: &str = "PARTINV_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "partinv", version, about = "Partial Inversion sparse recovery experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Success rates over a (delta, rho) grid; writes CSV, PGM heatmap and metadata.
    PhaseDiagram(SweepArgs),
    /// Success rate as L varies at fixed (M, K); writes CSV and metadata.
    LSensitivity(LSensitivityArgs),
    /// Best L per (delta, rho) cell; writes CSV, PGM heatmap and metadata.
    BestL(SweepArgs),
    /// Wavelet-tree recovery through sampling, blur and Daubechies-5 synthesis.
    Wavelet(WaveletArgs),
    /// Recovers one instance from a .dmat matrix and a measurement vector.
    Recover(RecoverArgs),
    /// Writes |Phi^T Phi| as CSV and PGM.
    CorrelationMap(CorrelationArgs),
    /// Builds or samples an instance and prints the exact-recovery condition report.
    CheckTheorem(TheoremArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// gaussian | correlated-block | wavelet-tree
    #[arg(long)]
    ensemble: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated M/N values.
    #[arg(long)]
    deltas: Option<String>,
    /// Comma-separated K/M values.
    #[arg(long)]
    rhos: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// partinv | cosamp | partinv-wavelet
    #[arg(long)]
    algo: Option<String>,
    /// equal-K | max-K-0.8M | comma-separated list
    #[arg(long)]
    l_policy: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    /// CSV path; the heatmap and metadata go next to it.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    pgm: Option<String>,
}

#[derive(Args, Debug)]
struct LSensitivityArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    ensemble: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated L values (default K, K+2, ..., 0.8M).
    #[arg(long)]
    l_values: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct WaveletArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sampling rates in sixteenths, e.g. 2,4,14.
    #[arg(long)]
    rates: Option<String>,
    /// Comma-separated active tree counts.
    #[arg(long)]
    trees: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    l_policy: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    pgm: Option<String>,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sensing matrix in .dmat format.
    #[arg(long)]
    phi: Option<String>,
    /// Measurement vector (.dmat with one row or column).
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Candidate-set size (default K).
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    /// Optional path for the estimate.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct CorrelationArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// filtered-haar | gaussian | correlated-block | file
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Matrix file for --source file.
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    pgm: Option<String>,
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    l: Option<String>,
    /// exhaustive | sampled
    #[arg(long)]
    mode: Option<String>,
    /// Random subsets in sampled mode.
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    a: Option<String>,
    /// Sampled mode only; default 1/(3 sqrt K).
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Config(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Config(m),
            other => Failure::Runtime(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn config_err(e: Error) -> Failure {
    Failure::Config(e.to_string())
}

/// Loads the config file and applies flag overrides.
fn settings(config: &Option<PathBuf>, overrides: &[(&str, &Option<String>)]) -> CliResult<Settings> {
    let mut s = match config {
        Some(p) => Settings::from_file(p).map_err(config_err)?,
        None => Settings::new(),
    };
    for (key, value) in overrides {
        if let Some(v) = value {
            s.set(key, v.as_str());
        }
    }
    let allowed: Vec<&str> = overrides.iter().map(|(k, _)| *k).collect();
    s.check_known(&allowed).map_err(config_err)?;
    Ok(s)
}

fn parse<T: std::str::FromStr>(s: &Settings, key: &str) -> CliResult<Option<T>>
where
    T::Err: std::fmt::Display,
{
    s.get(key).map_err(config_err)
}

fn list<T: std::str::FromStr>(s: &Settings, key: &str) -> CliResult<Option<Vec<T>>>
where
    T::Err: std::fmt::Display,
{
    s.get_list(key).map_err(config_err)
}

fn required<T>(v: Option<T>, key: &str) -> CliResult<T> {
    v.ok_or_else(|| Failure::Config(format!("missing required setting --{key}")))
}

fn threads() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| Failure::Config(format!("{THREADS_ENV}={v:?} is not a nonnegative integer"))),
        _ => Ok(0),
    }
}

fn sibling(csv: &Path, ext: &str) -> PathBuf {
    csv.with_extension(ext)
}

fn write_grid(grid: &SweepGrid, out: &str, pgm: Option<String>, with_heatmap: bool) -> CliResult<()> {
    let csv = PathBuf::from(out);
    write_text(&csv, &grid_to_csv(grid))?;
    write_text(sibling(&csv, "meta"), &grid_metadata(grid))?;
    let mut written = vec![csv.display().to_string()];
    if with_heatmap {
        let path = pgm.map(PathBuf::from).unwrap_or_else(|| sibling(&csv, "pgm"));
        heatmap(grid)?.write_pgm(&path)?;
        written.push(path.display().to_string());
    }
    let ok = grid.cells.iter().filter(|c| c.status == CellStatus::Ok).count();
    println!("cells={} ok={} wrote={}", grid.cells.len(), ok, written.join(","));
    Ok(())
}

const SWEEP_KEYS: [&str; 11] = [
    "ensemble", "n", "deltas", "rhos", "trials", "seed", "algo", "l-policy", "max-iters", "out", "pgm",
];

fn sweep_config(a: &SweepArgs) -> CliResult<(SweepConfig, Settings)> {
    let values = [
        &a.ensemble, &a.n, &a.deltas, &a.rhos, &a.trials, &a.seed, &a.algo, &a.l_policy, &a.max_iters, &a.out, &a.pgm,
    ];
    let pairs: Vec<(&str, &Option<String>)> = SWEEP_KEYS.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let ensemble: Ensemble = parse(&s, "ensemble")?.unwrap_or(Ensemble::Gaussian);
    let mut cfg = SweepConfig::new(ensemble);
    if let Some(n) = parse(&s, "n")? {
        cfg.n = n;
    }
    if let Some(d) = list(&s, "deltas")? {
        cfg.deltas = d;
    }
    if let Some(r) = list(&s, "rhos")? {
        cfg.rhos = r;
    }
    if let Some(t) = parse(&s, "trials")? {
        cfg.trials = t;
    }
    if let Some(v) = parse(&s, "seed")? {
        cfg.seed = v;
    }
    if let Some(v) = parse::<Algorithm>(&s, "algo")? {
        cfg.algorithm = v;
    }
    if let Some(v) = parse::<LPolicy>(&s, "l-policy")? {
        cfg.l_policy = v;
    }
    cfg.max_iterations = parse(&s, "max-iters")?;
    Ok((cfg, s))
}

fn cmd_phase_diagram(a: &SweepArgs) -> CliResult<()> {
    let (cfg, s) = sweep_config(a)?;
    cfg.validate().map_err(config_err)?;
    let grid = phase_diagram(&cfg)?;
    let out = s.get_str("out").unwrap_or("phase_diagram.csv").to_string();
    write_grid(&grid, &out, s.get_str("pgm").map(str::to_string), true)
}

fn cmd_best_l(a: &SweepArgs) -> CliResult<()> {
    let (mut cfg, s) = sweep_config(a)?;
    if a.trials.is_none() && s.get_str("trials").is_none() {
        cfg.trials = 100;
    }
    cfg.algorithm = if cfg.ensemble == Ensemble::WaveletTree { Algorithm::PartInvWavelet } else { Algorithm::PartInv };
    cfg.validate().map_err(config_err)?;
    let grid = best_l_search(&cfg)?;
    print_best_l(&grid);
    let out = s.get_str("out").unwrap_or("best_l.csv").to_string();
    write_grid(&grid, &out, s.get_str("pgm").map(str::to_string), true)
}

/// Table of best `L`: one line per row value, highest first; `-` for skipped.
fn print_best_l(grid: &SweepGrid) {
    for ri in (0..grid.rows.len()).rev() {
        let line: Vec<String> = (0..grid.deltas.len())
            .map(|di| match grid.cells_at(di, ri).first() {
                Some(c) if c.status == CellStatus::Ok => c.l.unwrap_or(0).to_string(),
                _ => "-".to_string(),
            })
            .collect();
        println!("{}", line.join("\t"));
    }
}

fn cmd_l_sensitivity(a: &LSensitivityArgs) -> CliResult<()> {
    let keys = ["ensemble", "n", "m", "k", "trials", "seed", "l-values", "max-iters", "out"];
    let values = [&a.ensemble, &a.n, &a.m, &a.k, &a.trials, &a.seed, &a.l_values, &a.max_iters, &a.out];
    let pairs: Vec<_> = keys.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let ensemble = parse(&s, "ensemble")?.unwrap_or(Ensemble::Gaussian);
    let m = required(parse(&s, "m")?, "m")?;
    let k = required(parse(&s, "k")?, "k")?;
    let mut cfg = LSensitivityConfig::new(ensemble, m, k);
    if let Some(n) = parse(&s, "n")? {
        cfg.n = n;
    }
    if let Some(t) = parse(&s, "trials")? {
        cfg.trials = t;
    }
    if let Some(v) = parse(&s, "seed")? {
        cfg.seed = v;
    }
    cfg.l_values = list(&s, "l-values")?;
    cfg.max_iterations = parse(&s, "max-iters")?;
    let grid = l_sensitivity(&cfg)?;
    for c in &grid.cells {
        match c.proportion() {
            Some(p) => println!("L={} success={p}", c.l.unwrap_or(0)),
            None => println!("L={} skipped", c.l.unwrap_or(0)),
        }
    }
    let out = s.get_str("out").unwrap_or("l_sensitivity.csv").to_string();
    write_grid(&grid, &out, None, false)
}

fn cmd_wavelet(a: &WaveletArgs) -> CliResult<()> {
    let keys = ["rates", "trees", "trials", "seed", "algo", "l-policy", "max-iters", "out", "pgm"];
    let values = [&a.rates, &a.trees, &a.trials, &a.seed, &a.algo, &a.l_policy, &a.max_iters, &a.out, &a.pgm];
    let pairs: Vec<_> = keys.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let mut cfg = WaveletConfig::default();
    if let Some(r) = list(&s, "rates")? {
        cfg.rates = r;
    }
    cfg.tree_counts = list(&s, "trees")?;
    if let Some(t) = parse(&s, "trials")? {
        cfg.trials = t;
    }
    if let Some(v) = parse(&s, "seed")? {
        cfg.seed = v;
    }
    if let Some(v) = parse(&s, "algo")? {
        cfg.algorithm = v;
    }
    if let Some(v) = parse(&s, "l-policy")? {
        cfg.l_policy = v;
    }
    cfg.max_iterations = parse(&s, "max-iters")?;
    let grid = wavelet_experiment(&cfg)?;
    let out = s.get_str("out").unwrap_or("wavelet.csv").to_string();
    write_grid(&grid, &out, s.get_str("pgm").map(str::to_string), true)
}

fn cmd_recover(a: &RecoverArgs) -> CliResult<()> {
    let keys = ["phi", "y", "k", "l", "algo", "max-iters", "out"];
    let values = [&a.phi, &a.y, &a.k, &a.l, &a.algo, &a.max_iters, &a.out];
    let pairs: Vec<_> = keys.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let phi_path: String = required(s.get_str("phi").map(str::to_string), "phi")?;
    let y_path: String = required(s.get_str("y").map(str::to_string), "y")?;
    let k: usize = required(parse(&s, "k")?, "k")?;
    let l: usize = parse(&s, "l")?.unwrap_or(k);
    let algo: Algorithm = parse(&s, "algo")?.unwrap_or(Algorithm::PartInv);
    let max_iters: Option<usize> = parse(&s, "max-iters")?;

    let phi = read_dmat(&phi_path)?;
    let y = read_vector(&y_path)?;
    let mut opts = PartInvOptions::with_l(l);
    opts.max_iterations = max_iters;
    let out = match algo {
        Algorithm::PartInv => partinv(&phi, &y, k, &opts)?,
        Algorithm::CoSaMP => cosamp(&phi, &y, k, max_iters.unwrap_or_else(|| default_max_iterations(k)))?,
        Algorithm::PartInvWavelet => {
            let side = (phi.cols() as f64).sqrt().round() as usize;
            if side * side != phi.cols() {
                return Err(Failure::Config("partinv-wavelet needs a square image (N = side^2)".into()));
            }
            let partition = tree_partition(side, side.trailing_zeros() as usize)?;
            partinv_wavelet(&phi, &y, k, &partition, &opts)?
        }
    };
    let support: Vec<String> = out.support.iter().map(usize::to_string).collect();
    println!("support={}", support.join(","));
    println!("residual={:e}", out.residual_norm);
    println!("iterations={}", out.iterations);
    println!("termination={}", out.termination.as_str());
    if let Some(path) = s.get_str("out") {
        write_vector(path, &out.estimate)?;
    }
    Ok(())
}

fn cmd_correlation_map(a: &CorrelationArgs) -> CliResult<()> {
    let keys = ["source", "n", "m", "seed", "phi", "out", "pgm"];
    let values = [&a.source, &a.n, &a.m, &a.seed, &a.phi, &a.out, &a.pgm];
    let pairs: Vec<_> = keys.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let source = s.get_str("source").unwrap_or("filtered-haar").to_string();
    let n: usize = parse(&s, "n")?.unwrap_or(256);
    let m: usize = parse(&s, "m")?.unwrap_or(n / 2);
    let seed: u64 = parse(&s, "seed")?.unwrap_or(0);
    let mut rng = RngStream::new(seed, &[]);
    let phi: DenseMatrix = match source.as_str() {
        "filtered-haar" => filtered_haar_matrix(n)?,
        "gaussian" => gaussian_matrix(m, n, &mut rng)?,
        "correlated-block" => correlated_block_matrix(m, n, &CorrelatedBlockParams::default(), &mut rng)?,
        "file" => read_dmat(required(s.get_str("phi"), "phi")?)?,
        other => {
            return Err(Failure::Config(format!(
                "unknown source {other:?} (filtered-haar, gaussian, correlated-block, file)"
            )))
        }
    };
    let map = correlation_map(&phi);
    let csv = PathBuf::from(s.get_str("out").unwrap_or("correlation_map.csv"));
    write_text(&csv, &matrix_to_csv(&map))?;
    let pgm = s.get_str("pgm").map(PathBuf::from).unwrap_or_else(|| sibling(&csv, "pgm"));
    matrix_image(&map).write_pgm(&pgm)?;
    let total = map.as_slice().len();
    let above = map.as_slice().iter().filter(|&&v| v > 0.05).count();
    println!("size={}", map.rows());
    println!("fraction_above_0.05={}", above as f64 / total as f64);
    println!("wrote={},{}", csv.display(), pgm.display());
    Ok(())
}

fn cmd_check_theorem(a: &TheoremArgs) -> CliResult<()> {
    let keys = ["n", "m", "k", "l", "mode", "samples", "seed", "a", "delta", "out"];
    let values = [&a.n, &a.m, &a.k, &a.l, &a.mode, &a.samples, &a.seed, &a.a, &a.delta, &a.out];
    let pairs: Vec<_> = keys.iter().copied().zip(values).collect();
    let s = settings(&a.config, &pairs)?;
    let n: usize = parse(&s, "n")?.unwrap_or(16);
    let m: usize = parse(&s, "m")?.unwrap_or(12);
    let k: usize = parse(&s, "k")?.unwrap_or(2);
    let l: usize = parse(&s, "l")?.unwrap_or(k.max(2));
    let seed: u64 = parse(&s, "seed")?.unwrap_or(0);
    let a_bound: f64 = parse(&s, "a")?.unwrap_or_else(|| default_a_bound(l));
    let mode = s.get_str("mode").unwrap_or("exhaustive");
    let mut rng = RngStream::new(seed, &[]);
    let report = match mode {
        "exhaustive" => {
            if n > EXHAUSTIVE_MAX_N || l > EXHAUSTIVE_MAX_L {
                return Err(Failure::Config(format!(
                    "exhaustive mode needs n <= {EXHAUSTIVE_MAX_N} and l <= {EXHAUSTIVE_MAX_L}"
                )));
            }
            construct_theorem_instance_with(m, n, k, l, a_bound, &mut rng).map_err(|e| match e {
                Error::InvalidArgument(msg) => Failure::Config(msg),
                other => Failure::Runtime(other),
            })?
            .2
        }
        "sampled" => {
            let samples: usize = parse(&s, "samples")?.unwrap_or(500);
            let delta: f64 = parse(&s, "delta")?.unwrap_or(1.0 / (3.0 * (k as f64).sqrt()));
            let phi = gaussian_matrix(m, n, &mut rng)?;
            let c = random_sparse_signal(n, k, &mut rng)?;
            check_all(&phi, &c, l, a_bound, delta, &CheckMode::Sampled { count: samples, seed })?
        }
        other => return Err(Failure::Config(format!("unknown mode {other:?} (exhaustive, sampled)"))),
    };
    let text = report.to_text();
    print!("{text}");
    if let Some(path) = s.get_str("out") {
        write_text(path, &text)?;
    }
    Ok(())
}

fn dispatch(command: &Command) -> CliResult<()> {
    match command {
        Command::PhaseDiagram(a) => cmd_phase_diagram(a),
        Command::LSensitivity(a) => cmd_l_sensitivity(a),
        Command::BestL(a) => cmd_best_l(a),
        Command::Wavelet(a) => cmd_wavelet(a),
        Command::Recover(a) => cmd_recover(a),
        Command::CorrelationMap(a) => cmd_correlation_map(a),
        Command::CheckTheorem(a) => cmd_check_theorem(a),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 on success, 2 for usage or configuration errors, 1 for runtime
/// failures.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = threads().and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Runtime(Error::invalid(e.to_string())))?;
        pool.install(|| dispatch(&cli.command))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            EXIT_CONFIG
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}
