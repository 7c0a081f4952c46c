//! Greedy recovery: PartInv, tree-structured PartInv and the CoSaMP baseline.

mod cosamp;
mod partinv;
mod tree;

pub use cosamp::cosamp;
pub use partinv::{partial_inversion, partinv};
pub use tree::{partinv_wavelet, select_sets};

use crate::linalg::{norm2, LeastSquaresMethod};
use crate::sensing::SparseSignal;

/// Relative residual `‖y − Φĉ‖ / ‖y‖` at which iterations stop.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-7;

/// Per-coordinate mean squared error below which a recovery counts as a
/// success.
pub const SUCCESS_THRESHOLD: f64 = 1e-5;

/// Iteration cap used when none is given: `max(K, 30)`.
pub fn default_max_iterations(k: usize) -> usize {
    k.max(30)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    ResidualConverged,
    /// The candidate set repeated: either unchanged from the previous
    /// iteration or equal to one visited earlier (a cycle).
    SupportStagnated,
    MaxIterations,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::ResidualConverged => "residual-converged",
            Termination::SupportStagnated => "support-stagnated",
            Termination::MaxIterations => "max-iterations",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryResult {
    /// Length-`N` estimate, zero off `support`.
    pub estimate: Vec<f64>,
    /// Sorted, `|support| = K`.
    pub support: Vec<usize>,
    pub iterations: usize,
    /// `‖y − Φ·estimate‖₂`.
    pub residual_norm: f64,
    pub termination: Termination,
    /// Candidate sets that were inverted, in order; empty unless requested.
    pub trace: Vec<Vec<usize>>,
}

/// Options for [`partinv`] and [`partinv_wavelet`].
#[derive(Clone, Debug, PartialEq)]
pub struct PartInvOptions {
    /// Candidate-set size, `K <= L < M`. For the tree variant this is the
    /// minimum number of coefficients the selected sets must cover.
    pub l: usize,
    /// `None` means [`default_max_iterations`].
    pub max_iterations: Option<usize>,
    pub residual_tol: f64,
    pub solver: LeastSquaresMethod,
    pub record_trace: bool,
}

impl PartInvOptions {
    pub fn with_l(l: usize) -> Self {
        PartInvOptions {
            l,
            max_iterations: None,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            solver: LeastSquaresMethod::Direct,
            record_trace: false,
        }
    }

    /// `L = K`, the safe default for generic matrices.
    pub fn equal_k(k: usize) -> Self {
        Self::with_l(k)
    }

    /// `L = max(K, ⌊0.8·M⌋)`, used for the correlated column-subset ensemble.
    pub fn max_k_08m(k: usize, m: usize) -> Self {
        Self::with_l(k.max(m * 4 / 5))
    }

    pub fn max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = Some(n);
        self
    }

    pub fn solver(mut self, solver: LeastSquaresMethod) -> Self {
        self.solver = solver;
        self
    }

    pub fn trace(mut self, on: bool) -> Self {
        self.record_trace = on;
        self
    }
}

/// Indices of the `l` largest-magnitude entries, ties to the lower index,
/// returned in ascending order.
pub fn select_top(v: &[f64], l: usize) -> Vec<usize> {
    assert!(l <= v.len(), "cannot select {l} of {} entries", v.len());
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let by_magnitude = |&a: &usize, &b: &usize| v[b].abs().total_cmp(&v[a].abs()).then(a.cmp(&b));
    if l < idx.len() && l > 0 {
        idx.select_nth_unstable_by(l - 1, by_magnitude);
    }
    idx.truncate(l);
    idx.sort_unstable();
    idx
}

/// `(1/N)·‖c − ĉ‖²`.
pub fn mean_squared_error(c: &SparseSignal, estimate: &[f64]) -> f64 {
    assert_eq!(c.len(), estimate.len(), "signal and estimate lengths differ");
    let diff: Vec<f64> = c.values().iter().zip(estimate).map(|(a, b)| a - b).collect();
    let e = norm2(&diff);
    e * e / c.len() as f64
}

/// Success criterion: `(1/N)·‖c − ĉ‖² < 10⁻⁵`. Panics if lengths differ.
pub fn success(c: &SparseSignal, estimate: &[f64]) -> bool {
    mean_squared_error(c, estimate) < SUCCESS_THRESHOLD
}
