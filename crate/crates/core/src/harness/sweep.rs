use std::sync::Arc;

use rayon::prelude::*;

use super::config::{sixteenths, Algorithm, Ensemble, LPolicy, SweepConfig, WAVELET_LEVELS, WAVELET_SIDE};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::recovery::{cosamp, default_max_iterations, partinv, partinv_wavelet, success, PartInvOptions};
use crate::sensing::{
    blur_operator_2d, clustered_sparse_signal, correlated_block_matrix, gaussian_matrix, near_delta_blur_kernel,
    random_sparse_signal, CorrelatedBlockParams, RngStream, SamplingPattern, SparseSignal,
};
use crate::wavelet::{daubechies5_basis_2d, tree_partition, TreePartition};

/// First element of every trial stream id, separating experiment families.
const TAG_PHASE: u64 = 0;
const TAG_L_SENSITIVITY: u64 = 1;
const TAG_WAVELET: u64 = 2;

/// Last element of a trial stream id.
pub const ROLE_MATRIX: u64 = 0;
pub const ROLE_SIGNAL: u64 = 1;

/// Coefficients per wavelet tree.
pub const TREE_SIZE: usize = 21;

/// Column subsets of the correlated ensemble and how many of them carry the
/// signal.
const CORRELATED_SUBSETS: usize = 16;
const CORRELATED_ACTIVE: usize = 4;

/// Matrix and signal streams of one trial:
/// `(seed, [tag, a, b, trial, role])`.
pub fn trial_streams(seed: u64, key: [u64; 3], trial: usize) -> (RngStream, RngStream) {
    let id = |role| [key[0], key[1], key[2], trial as u64, role];
    (RngStream::new(seed, &id(ROLE_MATRIX)), RngStream::new(seed, &id(ROLE_SIGNAL)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    Skipped(String),
}

/// Aggregated trials for one `(δ, row, L)` combination.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub delta_index: usize,
    pub row_index: usize,
    pub delta: f64,
    /// `K/M` as actually used.
    pub rho: f64,
    pub m: usize,
    pub k: usize,
    /// `None` for CoSaMP.
    pub l: Option<usize>,
    pub trials: usize,
    pub successes: usize,
    pub mean_iterations: f64,
    pub mean_residual: f64,
    pub status: CellStatus,
    /// `[tag, a, b]` prefix of the trial stream ids.
    pub stream: [u64; 3],
}

impl Cell {
    /// Success proportion, `None` when skipped.
    pub fn proportion(&self) -> Option<f64> {
        (self.status == CellStatus::Ok && self.trials > 0).then(|| self.successes as f64 / self.trials as f64)
    }
}

/// Results of a sweep. `deltas` is the horizontal axis, `rows` the vertical
/// one (`ρ` values or tree counts, named by `row_axis`).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub deltas: Vec<f64>,
    pub rows: Vec<f64>,
    pub row_axis: &'static str,
    /// Sorted by `(delta_index, row_index)`, then by `L` in the order run.
    pub cells: Vec<Cell>,
    pub metadata: Vec<(String, String)>,
}

impl SweepGrid {
    /// Best success proportion over `L` at a grid point; 0 when every entry
    /// there was skipped.
    pub fn proportion(&self, delta_index: usize, row_index: usize) -> f64 {
        self.cells
            .iter()
            .filter(|c| c.delta_index == delta_index && c.row_index == row_index)
            .filter_map(Cell::proportion)
            .fold(0.0, f64::max)
    }

    /// Cells at a grid point, one per `L`.
    pub fn cells_at(&self, delta_index: usize, row_index: usize) -> Vec<&Cell> {
        self.cells
            .iter()
            .filter(|c| c.delta_index == delta_index && c.row_index == row_index)
            .collect()
    }

    pub fn delta_index(&self, delta: f64) -> Option<usize> {
        self.deltas.iter().position(|&d| (d - delta).abs() < 1e-12)
    }

    pub fn row_index(&self, row: f64) -> Option<usize> {
        self.rows.iter().position(|&r| (r - row).abs() < 1e-12)
    }
}

/// Per-grid-point work description.
struct CellSpec {
    di: usize,
    ri: usize,
    delta: f64,
    m: usize,
    k: usize,
    trees: Option<usize>,
    stream: [u64; 3],
    /// `L` values to run; `None` entries mean CoSaMP.
    ls: Vec<Option<usize>>,
    skip: Option<String>,
    source: Source,
}

#[derive(Clone)]
enum Source {
    Gaussian,
    Correlated,
    Wavelet(Arc<DenseMatrix>, Arc<TreePartition>),
}

#[derive(Clone, Copy)]
struct Outcome {
    success: bool,
    iterations: usize,
    residual: f64,
}

/// `⌊K/4⌋` nonzeros in each of 4 random subsets plus the remainder in a
/// fifth. When `⌊K/4⌋` exceeds the subset width the number of active
/// subsets grows until the nonzeros fit.
pub fn correlated_signal(n: usize, k: usize, rng: &mut RngStream) -> Result<SparseSignal> {
    let group = n / CORRELATED_SUBSETS;
    let mut active = CORRELATED_ACTIVE;
    while active <= CORRELATED_SUBSETS {
        let fits = k / active <= group && k % active <= group;
        let groups = active + usize::from(k % active > 0);
        if fits && groups <= CORRELATED_SUBSETS {
            return clustered_sparse_signal(n, k, CORRELATED_SUBSETS, active, rng);
        }
        active += 1;
    }
    Err(Error::invalid(format!("K={k} does not fit in {CORRELATED_SUBSETS} subsets of {group}")))
}

fn tree_signal(partition: &TreePartition, trees: usize, rng: &mut RngStream) -> Result<SparseSignal> {
    let candidates = partition.tree_sets();
    if trees > candidates.len() {
        return Err(Error::invalid(format!("{trees} trees requested, only {} exist", candidates.len())));
    }
    let mut support: Vec<usize> = rng
        .sample_indices(candidates.len(), trees)
        .into_iter()
        .flat_map(|i| partition.set(candidates[i]).to_vec())
        .collect();
    support.sort_unstable();
    let entries: Vec<f64> = (0..support.len()).map(|_| rng.standard_normal()).collect();
    SparseSignal::new(partition.total(), support, &entries)
}

fn draw(
    source: &Source,
    m: usize,
    n: usize,
    k: usize,
    trees: Option<usize>,
    matrix_rng: &mut RngStream,
    signal_rng: &mut RngStream,
) -> Result<(Arc<DenseMatrix>, SparseSignal)> {
    match source {
        Source::Gaussian => Ok((
            Arc::new(gaussian_matrix(m, n, matrix_rng)?),
            random_sparse_signal(n, k, signal_rng)?,
        )),
        Source::Correlated => Ok((
            Arc::new(correlated_block_matrix(m, n, &CorrelatedBlockParams::default(), matrix_rng)?),
            correlated_signal(n, k, signal_rng)?,
        )),
        Source::Wavelet(phi, partition) => {
            let trees = trees.unwrap_or(k / TREE_SIZE);
            Ok((Arc::clone(phi), tree_signal(partition, trees, signal_rng)?))
        }
    }
}

fn recover(
    algorithm: Algorithm,
    phi: &DenseMatrix,
    y: &[f64],
    k: usize,
    l: Option<usize>,
    partition: Option<&TreePartition>,
    max_iterations: Option<usize>,
) -> Result<crate::recovery::RecoveryResult> {
    let opts = |l: usize| {
        let o = PartInvOptions::with_l(l);
        match max_iterations {
            Some(mi) => o.max_iterations(mi),
            None => o,
        }
    };
    match (algorithm, l) {
        (Algorithm::CoSaMP, _) => cosamp(phi, y, k, max_iterations.unwrap_or_else(|| default_max_iterations(k))),
        (Algorithm::PartInv, Some(l)) => partinv(phi, y, k, &opts(l)),
        (Algorithm::PartInvWavelet, Some(l)) => {
            let p = partition.ok_or_else(|| Error::invalid("partinv-wavelet needs a tree partition"))?;
            partinv_wavelet(phi, y, k, p, &opts(l))
        }
        (_, None) => Err(Error::invalid("candidate-set size L missing")),
    }
}

struct Runner {
    algorithm: Algorithm,
    n: usize,
    trials: usize,
    seed: u64,
    max_iterations: Option<usize>,
}

impl Runner {
    fn trial(&self, spec: &CellSpec, trial: usize) -> Result<Vec<Outcome>> {
        let (mut mrng, mut srng) = trial_streams(self.seed, spec.stream, trial);
        let (phi, c) = draw(&spec.source, spec.m, self.n, spec.k, spec.trees, &mut mrng, &mut srng)?;
        let y = phi.mul_vec(c.values())?;
        let partition = match &spec.source {
            Source::Wavelet(_, p) => Some(p.as_ref()),
            _ => None,
        };
        spec.ls
            .iter()
            .map(|&l| {
                let out = recover(self.algorithm, &phi, &y, spec.k, l, partition, self.max_iterations)?;
                Ok(Outcome {
                    success: success(&c, &out.estimate),
                    iterations: out.iterations,
                    residual: out.residual_norm,
                })
            })
            .collect()
    }

    /// Runs every feasible cell; returns, per spec, one [`Cell`] per `L`.
    fn run(&self, specs: &[CellSpec]) -> Result<Vec<Vec<Cell>>> {
        let tasks: Vec<(usize, usize)> = specs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.skip.is_none())
            .flat_map(|(i, _)| (0..self.trials).map(move |t| (i, t)))
            .collect();
        let outcomes: Vec<Vec<Outcome>> = tasks
            .par_iter()
            .map(|&(i, t)| self.trial(&specs[i], t))
            .collect::<Result<_>>()?;

        let mut per_spec: Vec<Vec<Vec<Outcome>>> = vec![Vec::new(); specs.len()];
        for (&(i, _), o) in tasks.iter().zip(outcomes) {
            per_spec[i].push(o);
        }
        Ok(specs
            .iter()
            .zip(per_spec)
            .map(|(spec, trials)| self.aggregate(spec, &trials))
            .collect())
    }

    fn aggregate(&self, spec: &CellSpec, trials: &[Vec<Outcome>]) -> Vec<Cell> {
        let rho = spec.k as f64 / spec.m.max(1) as f64;
        let base = |l: Option<usize>| Cell {
            delta_index: spec.di,
            row_index: spec.ri,
            delta: spec.delta,
            rho,
            m: spec.m,
            k: spec.k,
            l,
            trials: 0,
            successes: 0,
            mean_iterations: 0.0,
            mean_residual: 0.0,
            status: CellStatus::Ok,
            stream: spec.stream,
        };
        if let Some(reason) = &spec.skip {
            let ls: Vec<Option<usize>> = if spec.ls.is_empty() { vec![None] } else { spec.ls.clone() };
            return ls
                .into_iter()
                .map(|l| Cell {
                    status: CellStatus::Skipped(reason.clone()),
                    ..base(l)
                })
                .collect();
        }
        spec.ls
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let n = trials.len();
                let successes = trials.iter().filter(|t| t[j].success).count();
                let iters: f64 = trials.iter().map(|t| t[j].iterations as f64).sum();
                let resid: f64 = trials.iter().map(|t| t[j].residual).sum();
                Cell {
                    trials: n,
                    successes,
                    mean_iterations: iters / n as f64,
                    mean_residual: resid / n as f64,
                    ..base(l)
                }
            })
            .collect()
    }
}

/// Checks `K ≤ L < M` for every value, splitting out infeasible ones.
fn feasible_ls(ls: &[usize], m: usize, k: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let (ok, bad): (Vec<usize>, Vec<usize>) = ls.iter().partition(|&&l| l >= k && l < m);
    (ok.into_iter().map(Some).collect(), bad)
}

fn dims_problem(ensemble: Ensemble, m: usize, n: usize, k: usize) -> Option<String> {
    if m == 0 || m > n {
        return Some(format!("M={m} outside 1..=N"));
    }
    if k >= m {
        return Some(format!("K={k} >= M={m}"));
    }
    if ensemble == Ensemble::CorrelatedBlock && m < CORRELATED_SUBSETS {
        return Some(format!("M={m} below the {CORRELATED_SUBSETS} subsets"));
    }
    None
}

/// Precomputed pieces of the wavelet-tree sensing matrices.
struct WaveletSetup {
    blurred_basis: DenseMatrix,
    partition: Arc<TreePartition>,
}

impl WaveletSetup {
    fn new() -> Result<Self> {
        let h = blur_operator_2d(WAVELET_SIDE, &near_delta_blur_kernel())?;
        let psi = daubechies5_basis_2d(WAVELET_SIDE, WAVELET_LEVELS)?;
        Ok(WaveletSetup {
            blurred_basis: h.matmul(&psi)?,
            partition: Arc::new(tree_partition(WAVELET_SIDE, WAVELET_LEVELS)?),
        })
    }

    /// `Φ = S·H·Ψ` for a standard sampling rate; `S` only selects rows.
    fn sensing(&self, sixteenths: usize) -> Result<DenseMatrix> {
        let pattern = SamplingPattern::standard(sixteenths)?;
        let rows: Vec<usize> = pattern
            .mask()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(p, _)| p)
            .collect();
        let hp = &self.blurred_basis;
        Ok(DenseMatrix::from_fn(rows.len(), hp.cols(), |i, j| hp.get(rows[i], j)))
    }
}

/// The wavelet-tree sensing matrix `S·H·Ψ` at rate `sixteenths/16` on
/// 32×32 images, with its 49-set tree partition.
pub fn wavelet_sensing_matrix(sixteenths: usize) -> Result<(DenseMatrix, TreePartition)> {
    let setup = WaveletSetup::new()?;
    let phi = setup.sensing(sixteenths)?;
    Ok((phi, (*setup.partition).clone()))
}

fn wavelet_sources(deltas: &[usize]) -> Result<(Vec<Arc<DenseMatrix>>, Arc<TreePartition>)> {
    let setup = WaveletSetup::new()?;
    let phis = deltas
        .iter()
        .map(|&s| setup.sensing(s).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    Ok((phis, Arc::clone(&setup.partition)))
}

/// Success rates over a `(δ, ρ)` grid.
///
/// Each trial draws its matrix and signal from streams keyed by
/// `(seed, δ index, ρ index, trial)`, so trials are paired across
/// algorithms and `L` values and results do not depend on scheduling. Work
/// runs on the current rayon pool. Cells with `K ≥ M` or an `L` outside
/// `[K, M)` are marked skipped.
pub fn phase_diagram(cfg: &SweepConfig) -> Result<SweepGrid> {
    cfg.validate()?;
    let specs = phase_specs(cfg)?;
    let runner = Runner {
        algorithm: cfg.algorithm,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        max_iterations: cfg.max_iterations,
    };
    let cells = runner.run(&specs)?.into_iter().flatten().collect();
    let mut metadata = cfg.describe();
    metadata.push(("streams".into(), "seed,[0,delta_index,rho_index,trial,role]".into()));
    if cfg.ensemble == Ensemble::WaveletTree {
        metadata.push(("k-rule".into(), "K = 21 * max(1, round(rho*M/21))".into()));
    }
    Ok(SweepGrid {
        deltas: cfg.deltas.clone(),
        rows: cfg.rhos.clone(),
        row_axis: "rho",
        cells,
        metadata,
    })
}

fn phase_specs(cfg: &SweepConfig) -> Result<Vec<CellSpec>> {
    let wavelet = if cfg.ensemble == Ensemble::WaveletTree {
        let rates: Vec<usize> = cfg.deltas.iter().map(|&d| sixteenths(d).unwrap_or(0)).collect();
        Some(wavelet_sources(&rates)?)
    } else {
        None
    };
    let mut specs = Vec::new();
    for (di, &delta) in cfg.deltas.iter().enumerate() {
        let m = cfg.m_for(delta);
        for (ri, &rho) in cfg.rhos.iter().enumerate() {
            let (k, trees, source) = match &wavelet {
                Some((phis, p)) => {
                    let trees = ((rho * m as f64 / TREE_SIZE as f64).round() as usize).max(1);
                    (trees * TREE_SIZE, Some(trees), Source::Wavelet(Arc::clone(&phis[di]), Arc::clone(p)))
                }
                None => (
                    SweepConfig::k_for(m, rho),
                    None,
                    if cfg.ensemble == Ensemble::Gaussian { Source::Gaussian } else { Source::Correlated },
                ),
            };
            specs.push(cell_spec(
                cfg.ensemble,
                cfg.algorithm,
                &cfg.l_policy,
                (di, ri, delta),
                (m, cfg.n, k, trees),
                [TAG_PHASE, di as u64, ri as u64],
                source,
            ));
        }
    }
    Ok(specs)
}

fn cell_spec(
    ensemble: Ensemble,
    algorithm: Algorithm,
    policy: &LPolicy,
    (di, ri, delta): (usize, usize, f64),
    (m, n, k, trees): (usize, usize, usize, Option<usize>),
    stream: [u64; 3],
    source: Source,
) -> CellSpec {
    let mut skip = dims_problem(ensemble, m, n, k);
    if let (Some(t), Source::Wavelet(_, p)) = (trees, &source) {
        if t > p.tree_sets().len() {
            skip = Some(format!("{t} trees exceed the {} available", p.tree_sets().len()));
        }
    }
    let (ls, bad) = if algorithm == Algorithm::CoSaMP {
        (vec![None], Vec::new())
    } else {
        feasible_ls(&policy.values(m, k), m, k)
    };
    let mut spec = CellSpec {
        di,
        ri,
        delta,
        m,
        k,
        trees,
        stream,
        ls,
        skip,
        source,
    };
    if spec.skip.is_none() && spec.ls.is_empty() {
        spec.skip = Some(format!("no L in [K, M) among {bad:?}"));
        spec.ls = bad.into_iter().map(Some).collect();
    }
    spec
}

/// Configuration of an `L`-sensitivity curve.
#[derive(Clone, Debug, PartialEq)]
pub struct LSensitivityConfig {
    pub ensemble: Ensemble,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// `None` means `K, K+2, …, ⌊0.8M⌋`.
    pub l_values: Option<Vec<usize>>,
    pub max_iterations: Option<usize>,
}

impl LSensitivityConfig {
    pub fn new(ensemble: Ensemble, m: usize, k: usize) -> Self {
        LSensitivityConfig {
            ensemble,
            n: 256,
            m,
            k,
            trials: 25,
            seed: 0,
            l_values: None,
            max_iterations: None,
        }
    }

    pub fn l_grid(&self) -> Vec<usize> {
        match &self.l_values {
            Some(v) => v.clone(),
            None => (self.k..=self.m * 4 / 5).step_by(2).collect(),
        }
    }
}

/// PartInv success as `L` varies at fixed `(M, K)`, one cell per `L`. All
/// `L` values see the same trial instances.
pub fn l_sensitivity(cfg: &LSensitivityConfig) -> Result<SweepGrid> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if cfg.ensemble == Ensemble::WaveletTree {
        return Err(Error::Config("L-sensitivity supports the gaussian and correlated-block ensembles".into()));
    }
    if cfg.k == 0 || cfg.m == 0 || cfg.m > cfg.n {
        return Err(Error::Config(format!("need 1 <= K and 1 <= M <= N, got M={}, K={}, N={}", cfg.m, cfg.k, cfg.n)));
    }
    if cfg.l_values.is_none() && cfg.k > cfg.m * 4 / 5 {
        return Err(Error::Config(format!("K={} exceeds 0.8*M={}", cfg.k, cfg.m * 4 / 5)));
    }
    if cfg.ensemble == Ensemble::CorrelatedBlock && cfg.n % CORRELATED_SUBSETS != 0 {
        return Err(Error::Config("correlated-block ensemble needs N divisible by 16".into()));
    }
    let delta = cfg.m as f64 / cfg.n as f64;
    let source = if cfg.ensemble == Ensemble::Gaussian { Source::Gaussian } else { Source::Correlated };
    let spec = cell_spec(
        cfg.ensemble,
        Algorithm::PartInv,
        &LPolicy::Explicit(cfg.l_grid()),
        (0, 0, delta),
        (cfg.m, cfg.n, cfg.k, None),
        [TAG_L_SENSITIVITY, cfg.m as u64, cfg.k as u64],
        source,
    );
    let mut infeasible: Vec<Cell> = Vec::new();
    let wanted = cfg.l_grid();
    let runner = Runner {
        algorithm: Algorithm::PartInv,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        max_iterations: cfg.max_iterations,
    };
    let mut cells = runner.run(std::slice::from_ref(&spec))?.remove(0);
    if spec.skip.is_none() {
        for &l in &wanted {
            if !(l >= cfg.k && l < cfg.m) {
                infeasible.push(Cell {
                    l: Some(l),
                    trials: 0,
                    successes: 0,
                    mean_iterations: 0.0,
                    mean_residual: 0.0,
                    status: CellStatus::Skipped(format!("L={l} outside [K, M)")),
                    ..cells[0].clone()
                });
            }
        }
    }
    cells.extend(infeasible);
    cells.sort_by_key(|c| c.l);
    Ok(SweepGrid {
        deltas: vec![delta],
        rows: vec![cfg.k as f64 / cfg.m as f64],
        row_axis: "rho",
        cells,
        metadata: vec![
            ("ensemble".into(), cfg.ensemble.to_string()),
            ("n".into(), cfg.n.to_string()),
            ("m".into(), cfg.m.to_string()),
            ("k".into(), cfg.k.to_string()),
            ("trials".into(), cfg.trials.to_string()),
            ("seed".into(), cfg.seed.to_string()),
            ("streams".into(), "seed,[1,M,K,trial,role]".into()),
        ],
    })
}

/// For each `(δ, ρ)` cell, the `L ∈ {K, K+2, …} ∩ [K, M−1]` with the most
/// PartInv successes (ties to the smaller `L`). Cells where no `L` succeeds
/// report `L = 0`. Trials use the same streams as [`phase_diagram`].
/// `cfg.algorithm` and `cfg.l_policy` are ignored.
pub fn best_l_search(cfg: &SweepConfig) -> Result<SweepGrid> {
    let mut base = cfg.clone();
    base.algorithm = if cfg.ensemble == Ensemble::WaveletTree { Algorithm::PartInvWavelet } else { Algorithm::PartInv };
    base.l_policy = LPolicy::EqualK;
    base.validate()?;
    let mut specs = phase_specs(&base)?;
    for s in &mut specs {
        if s.skip.is_none() {
            s.ls = (s.k..s.m).step_by(2).map(Some).collect();
        }
    }
    let runner = Runner {
        algorithm: base.algorithm,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        max_iterations: cfg.max_iterations,
    };
    let cells = runner
        .run(&specs)?
        .into_iter()
        .map(|per_l| {
            let best = per_l
                .iter()
                .filter(|c| c.status == CellStatus::Ok)
                .fold(None::<&Cell>, |acc, c| match acc {
                    Some(b) if b.successes >= c.successes => Some(b),
                    _ => Some(c),
                });
            match best {
                Some(b) if b.successes == 0 => Cell { l: Some(0), ..b.clone() },
                Some(b) => b.clone(),
                None => per_l[0].clone(),
            }
        })
        .collect();
    let mut metadata = base.describe();
    metadata.retain(|(k, _)| k != "algo" && k != "l-policy");
    metadata.push(("l-grid".into(), "K, K+2, ..., <= M-1; 0 = no successes".into()));
    metadata.push(("streams".into(), "seed,[0,delta_index,rho_index,trial,role]".into()));
    Ok(SweepGrid {
        deltas: cfg.deltas.clone(),
        rows: cfg.rhos.clone(),
        row_axis: "rho",
        cells,
        metadata,
    })
}

/// Configuration of a wavelet-tree experiment on 32×32 images.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveletConfig {
    /// Sampling rates in sixteenths, each one of `2, 4, …, 14`.
    pub rates: Vec<usize>,
    /// Active tree counts; `None` means `1, …, ⌊M_max/21⌋`.
    pub tree_counts: Option<Vec<usize>>,
    pub trials: usize,
    pub seed: u64,
    pub l_policy: LPolicy,
    pub algorithm: Algorithm,
    pub max_iterations: Option<usize>,
}

impl Default for WaveletConfig {
    fn default() -> Self {
        WaveletConfig {
            rates: SamplingPattern::STANDARD_RATES.to_vec(),
            tree_counts: None,
            trials: 100,
            seed: 0,
            l_policy: LPolicy::EqualK,
            algorithm: Algorithm::PartInvWavelet,
            max_iterations: None,
        }
    }
}

impl WaveletConfig {
    pub fn tree_grid(&self) -> Vec<usize> {
        match &self.tree_counts {
            Some(v) => v.clone(),
            None => {
                let m_max = self.rates.iter().max().copied().unwrap_or(0) * 64;
                (1..=m_max / TREE_SIZE).collect()
            }
        }
    }
}

/// Tree-sparse recovery on `Φ = S·H·Ψ` (sampling, blur, Daubechies-5
/// synthesis). Signals take `N(0, 1)` values on randomly chosen wavelet trees
/// and zero elsewhere; `K = 21·trees`. Rows of the grid are tree counts.
pub fn wavelet_experiment(cfg: &WaveletConfig) -> Result<SweepGrid> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if cfg.rates.is_empty() {
        return Err(Error::Config("at least one sampling rate is required".into()));
    }
    if let Some(r) = cfg.rates.iter().find(|r| !SamplingPattern::STANDARD_RATES.contains(r)) {
        return Err(Error::Config(format!("sampling rate {r}/16 is not one of 2, 4, ..., 14")));
    }
    let trees = cfg.tree_grid();
    if trees.is_empty() || trees.contains(&0) {
        return Err(Error::Config("tree counts must be positive".into()));
    }
    let n = WAVELET_SIDE * WAVELET_SIDE;
    let (phis, partition) = wavelet_sources(&cfg.rates)?;
    let mut specs = Vec::new();
    for (di, &rate) in cfg.rates.iter().enumerate() {
        let m = rate * 64;
        for (ri, &t) in trees.iter().enumerate() {
            specs.push(cell_spec(
                Ensemble::WaveletTree,
                cfg.algorithm,
                &cfg.l_policy,
                (di, ri, rate as f64 / 16.0),
                (m, n, t * TREE_SIZE, Some(t)),
                [TAG_WAVELET, di as u64, ri as u64],
                Source::Wavelet(Arc::clone(&phis[di]), Arc::clone(&partition)),
            ));
        }
    }
    let runner = Runner {
        algorithm: cfg.algorithm,
        n,
        trials: cfg.trials,
        seed: cfg.seed,
        max_iterations: cfg.max_iterations,
    };
    let cells = runner.run(&specs)?.into_iter().flatten().collect();
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    Ok(SweepGrid {
        deltas: cfg.rates.iter().map(|&r| r as f64 / 16.0).collect(),
        rows: trees.iter().map(|&t| t as f64).collect(),
        row_axis: "trees",
        cells,
        metadata: vec![
            ("ensemble".into(), "wavelet-tree".into()),
            ("n".into(), n.to_string()),
            ("rates".into(), list(&cfg.rates)),
            ("trees".into(), list(&trees)),
            ("k-grid".into(), "K = 21 * trees".into()),
            ("trials".into(), cfg.trials.to_string()),
            ("algo".into(), cfg.algorithm.to_string()),
            ("l-policy".into(), cfg.l_policy.to_string()),
            ("seed".into(), cfg.seed.to_string()),
            ("streams".into(), "seed,[2,rate_index,tree_index,trial,role]".into()),
        ],
    })
}
