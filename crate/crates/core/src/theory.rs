//! Numerical checks of the PartInv exact-recovery conditions.
//!
//! For a `K`-sparse `c` with support `T`, a candidate-set size `L` and
//! constants `A ∈ [1, √L)`, `δ ∈ (0, 1/(3√K)]`, exact recovery in at most `K`
//! iterations is guaranteed when
//!
//! - every `|c_i|`, `i ∈ T`, is at least `3δ‖c‖₂` (signal condition);
//! - `σ_min(Φ_{T₁}) ≥ 1 − δ` for all `T₁ ⊆ T`;
//! - `‖Φ_I‖ ≤ A` for all `|I| ≤ L`;
//! - `‖Φ_I⁺‖ ≤ A`, i.e. the smallest nonzero singular value of `Φ_I` is at
//!   least `1/A`, for all `|I| ≤ L`;
//! - `‖Φ_I Φ_I⁺ Φ_{T∖I}‖ ≤ δ/A` for all `|I| ≤ L` (projection condition).
//!
//! Columns of `Φ` are assumed to have norm at most one.
//!
//! [`check_dictionary`] evaluates the dictionary conditions either over every
//! subset (small `N` only) or over a random sample plus the candidate sets a
//! PartInv run actually visits. Only exhaustive reports certify anything.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{norm2, svd, DenseMatrix, SvdFactors};
use crate::recovery::{partinv, PartInvOptions};
use crate::sensing::{RngStream, SparseSignal};

/// Exhaustive checking is only allowed up to these sizes.
pub const EXHAUSTIVE_MAX_N: usize = 32;
pub const EXHAUSTIVE_MAX_L: usize = 4;

/// Candidate budget for [`construct_theorem_instance`].
pub const SEARCH_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every subset `|I| ≤ L` and every `T₁ ⊆ T`.
    Exhaustive,
    /// `count` random subsets drawn from `seed`, plus `T` and the sets
    /// visited by PartInv on a flat signal over `T`.
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive => f.write_str("exhaustive"),
            CheckMode::Sampled { count, .. } => write!(f, "sampled({count})"),
        }
    }
}

/// Slack of one inequality and the subset where it is smallest.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub slack: f64,
    pub worst: Vec<usize>,
}

impl Condition {
    fn new() -> Self {
        Condition {
            slack: f64::INFINITY,
            worst: Vec::new(),
        }
    }

    fn observe(&mut self, slack: f64, subset: &[usize]) {
        if slack < self.slack {
            self.slack = slack;
            self.worst = subset.to_vec();
        }
    }

    pub fn pass(&self) -> bool {
        self.slack >= 0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignalCheck {
    /// `min_{i∈T} |c_i| − 3δ‖c‖₂`.
    pub margin: f64,
    /// `1/(3√K) − δ`.
    pub delta_margin: f64,
}

impl SignalCheck {
    pub fn pass(&self) -> bool {
        self.margin >= 0.0 && self.delta_margin >= 0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub delta: f64,
    pub a_bound: f64,
    pub k: usize,
    pub l: usize,
    pub mode: CheckMode,
    pub subsets_checked: usize,
    pub signal: Option<SignalCheck>,
    /// `σ_min(Φ_{T₁}) − (1 − δ)`.
    pub sigma_min_support: Condition,
    /// `A − ‖Φ_I‖`.
    pub sigma_max: Condition,
    /// `A − ‖Φ_I⁺‖`.
    pub pinv_norm: Condition,
    /// `δ/A − ‖Φ_I Φ_I⁺ Φ_{T∖I}‖`.
    pub projection: Condition,
    /// Smallest `A` for which the two norm conditions hold on the checked sets.
    pub measured_a: f64,
    /// Smallest `δ` for which the support and projection conditions hold
    /// with the given `A`.
    pub measured_delta: f64,
    pub warnings: Vec<String>,
}

impl TheoremReport {
    pub fn dictionary_pass(&self) -> bool {
        self.sigma_min_support.pass() && self.sigma_max.pass() && self.pinv_norm.pass() && self.projection.pass()
    }

    /// All conditions pass, including the signal condition when present.
    pub fn pass(&self) -> bool {
        self.dictionary_pass() && self.signal.as_ref().is_none_or(SignalCheck::pass)
    }

    /// Passing and exhaustively checked with a signal.
    pub fn certified(&self) -> bool {
        self.pass() && self.mode == CheckMode::Exhaustive && self.signal.is_some()
    }

    fn min_slack(&self) -> f64 {
        let mut s = self
            .sigma_min_support
            .slack
            .min(self.sigma_max.slack)
            .min(self.pinv_norm.slack)
            .min(self.projection.slack);
        if let Some(sig) = &self.signal {
            s = s.min(sig.margin).min(sig.delta_margin);
        }
        s
    }

    /// Flat `key=value` lines.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode={}", self.mode)?;
        writeln!(f, "certifying={}", self.mode == CheckMode::Exhaustive)?;
        writeln!(f, "subsets_checked={}", self.subsets_checked)?;
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "l={}", self.l)?;
        writeln!(f, "delta={:e}", self.delta)?;
        writeln!(f, "a_bound={:e}", self.a_bound)?;
        match &self.signal {
            Some(s) => {
                writeln!(f, "signal={}", verdict(s.pass()))?;
                writeln!(f, "signal_margin={:e}", s.margin)?;
                writeln!(f, "signal_delta_margin={:e}", s.delta_margin)?;
            }
            None => writeln!(f, "signal=unchecked")?,
        }
        for (name, c) in [
            ("sigma_min_support", &self.sigma_min_support),
            ("sigma_max", &self.sigma_max),
            ("pinv_norm", &self.pinv_norm),
            ("projection", &self.projection),
        ] {
            writeln!(f, "{name}={}", verdict(c.pass()))?;
            writeln!(f, "{name}_margin={:e}", c.slack)?;
            writeln!(f, "{name}_worst={}", join(&c.worst))?;
        }
        writeln!(f, "measured_a={:e}", self.measured_a)?;
        writeln!(f, "measured_delta={:e}", self.measured_delta)?;
        writeln!(f, "pass={}", self.pass())?;
        for w in &self.warnings {
            writeln!(f, "warning={w}")?;
        }
        Ok(())
    }
}

/// Rounds slacks within a few ulps of zero to exactly zero, so boundary
/// cases that hold with equality in exact arithmetic report margin 0.
fn snap(slack: f64, scale: f64) -> f64 {
    if slack.abs() <= 64.0 * f64::EPSILON * scale.abs().max(f64::MIN_POSITIVE) {
        0.0
    } else {
        slack
    }
}

/// Checks `|c_i| ≥ 3δ‖c‖₂` on the support and `δ ≤ 1/(3√K)`.
///
/// A zero signal trivially fails the `δ` bound (there is no valid `K`).
pub fn check_signal(c: &SparseSignal, delta: f64) -> SignalCheck {
    let k = c.sparsity();
    let norm = c.norm();
    let min_abs = c
        .support_values()
        .iter()
        .map(|v| v.abs())
        .fold(f64::INFINITY, f64::min);
    if k == 0 {
        return SignalCheck {
            margin: f64::NEG_INFINITY,
            delta_margin: f64::NEG_INFINITY,
        };
    }
    let cap = 1.0 / (3.0 * (k as f64).sqrt());
    SignalCheck {
        margin: snap(min_abs - 3.0 * delta * norm, norm),
        delta_margin: snap(cap - delta, cap),
    }
}

fn validate_params(phi: &DenseMatrix, t: &[usize], l: usize, a: f64, delta: f64) -> Result<()> {
    let (m, n) = (phi.rows(), phi.cols());
    let k = t.len();
    if k == 0 || t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&i| i >= n) {
        return Err(Error::invalid("support must be a nonempty sorted set of column indices"));
    }
    if l < k || l >= m || l > n {
        return Err(Error::invalid(format!("need K={k} <= L={l} < M={m}")));
    }
    if !(a >= 1.0 && a * a < l as f64) {
        return Err(Error::invalid(format!("A={a} must satisfy 1 <= A < sqrt(L)={}", (l as f64).sqrt())));
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::invalid(format!("delta={delta} must be finite and nonnegative")));
    }
    Ok(())
}

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if r == 0 || r > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx)?;
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] < n - r + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Quantities measured on one candidate set `I`.
struct SubsetMeasure {
    sigma_max: f64,
    sigma_r: f64,
    projection: f64,
}

fn range_projection_norm(f: &SvdFactors, phi: &DenseMatrix, outside: &[usize]) -> Result<f64> {
    let Some(u) = f.range_basis() else {
        return Ok(0.0);
    };
    if outside.is_empty() {
        return Ok(0.0);
    }
    let x = phi.select_columns(outside)?;
    let prod = u.transpose().matmul(&x)?;
    Ok(svd(&prod)?.sigma_max())
}

fn measure_subset(phi: &DenseMatrix, t: &[usize], subset: &[usize]) -> Result<SubsetMeasure> {
    let f = svd(&phi.select_columns(subset)?)?;
    let outside: Vec<usize> = t.iter().copied().filter(|i| subset.binary_search(i).is_err()).collect();
    Ok(SubsetMeasure {
        sigma_max: f.sigma_max(),
        sigma_r: f.sigma_min_nonzero(),
        projection: range_projection_norm(&f, phi, &outside)?,
    })
}

struct Accumulator {
    a: f64,
    delta: f64,
    sigma_max: Condition,
    pinv_norm: Condition,
    projection: Condition,
    max_sigma: f64,
    max_pinv: f64,
    max_projection: f64,
    checked: usize,
}

impl Accumulator {
    fn new(a: f64, delta: f64) -> Self {
        Accumulator {
            a,
            delta,
            sigma_max: Condition::new(),
            pinv_norm: Condition::new(),
            projection: Condition::new(),
            max_sigma: 0.0,
            max_pinv: 0.0,
            max_projection: 0.0,
            checked: 0,
        }
    }

    fn add(&mut self, phi: &DenseMatrix, t: &[usize], subset: &[usize]) -> Result<()> {
        let m = measure_subset(phi, t, subset)?;
        let pinv = if m.sigma_r > 0.0 { 1.0 / m.sigma_r } else { 0.0 };
        self.sigma_max.observe(snap(self.a - m.sigma_max, self.a), subset);
        self.pinv_norm.observe(snap(self.a - pinv, self.a), subset);
        let target = self.delta / self.a;
        self.projection.observe(snap(target - m.projection, target.max(1.0)), subset);
        self.max_sigma = self.max_sigma.max(m.sigma_max);
        self.max_pinv = self.max_pinv.max(pinv);
        self.max_projection = self.max_projection.max(m.projection);
        self.checked += 1;
        Ok(())
    }
}

/// Evaluates the dictionary conditions for support `t` (sorted), set size
/// `l`, and constants `a`, `delta`.
///
/// The support condition is checked as `σ_min(Φ_T) ≥ 1 − δ`, which covers
/// every `T₁ ⊆ T` by interlacing; exhaustive mode also checks each `T₁`
/// directly. Exhaustive mode requires `N ≤ 32` and `L ≤ 4`.
pub fn check_dictionary(
    phi: &DenseMatrix,
    t: &[usize],
    l: usize,
    a: f64,
    delta: f64,
    mode: &CheckMode,
) -> Result<TheoremReport> {
    validate_params(phi, t, l, a, delta)?;
    let n = phi.cols();
    let k = t.len();

    let mut support = Condition::new();
    let mut min_sigma_support = f64::INFINITY;
    let mut observe_support = |subset: &[usize]| -> Result<()> {
        let s = svd(&phi.select_columns(subset)?)?.sigma_min();
        min_sigma_support = min_sigma_support.min(s);
        support.observe(snap(s - (1.0 - delta), 1.0), subset);
        Ok(())
    };
    observe_support(t)?;

    let mut acc = Accumulator::new(a, delta);
    match mode {
        CheckMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N || l > EXHAUSTIVE_MAX_L {
                return Err(Error::invalid(format!(
                    "exhaustive checking needs N <= {EXHAUSTIVE_MAX_N} and L <= {EXHAUSTIVE_MAX_L}, got N={n}, L={l}"
                )));
            }
            for mask in 1u32..(1u32 << k) {
                if mask.count_ones() as usize == k {
                    continue;
                }
                let sub: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| t[b]).collect();
                observe_support(&sub)?;
            }
            for r in 1..=l {
                for_each_combination(n, r, |s| acc.add(phi, t, s))?;
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = RngStream::new(*seed, &[0x7e57]);
            for _ in 0..*count {
                let size = 1 + rng.below(l);
                let s = rng.sample_indices(n, size);
                acc.add(phi, t, &s)?;
            }
            acc.add(phi, t, t)?;
            let flat = vec![1.0; k];
            let y = phi.select_columns(t)?.mul_vec(&flat)?;
            let run = partinv(phi, &y, k, &PartInvOptions::with_l(l).trace(true))?;
            for s in &run.trace {
                acc.add(phi, t, s)?;
            }
        }
    }

    let mut warnings = Vec::new();
    if k <= 3 {
        warnings.push(format!(
            "K={k} <= 3: the guarantee additionally needs delta < 1/(2*sqrt(K)+2) = {:e}",
            1.0 / (2.0 * (k as f64).sqrt() + 2.0)
        ));
    }
    if matches!(mode, CheckMode::Sampled { .. }) {
        warnings.push("sampled mode does not certify the conditions".to_string());
    }
    if phi.column_norms().iter().any(|&c| c > 1.0 + 1e-12) {
        warnings.push("some columns have norm above one".to_string());
    }

    Ok(TheoremReport {
        delta,
        a_bound: a,
        k,
        l,
        mode: mode.clone(),
        subsets_checked: acc.checked,
        signal: None,
        sigma_min_support: support,
        sigma_max: acc.sigma_max,
        pinv_norm: acc.pinv_norm,
        projection: acc.projection,
        measured_a: acc.max_sigma.max(acc.max_pinv),
        measured_delta: (1.0 - min_sigma_support).max(a * acc.max_projection).max(0.0),
        warnings,
    })
}

/// [`check_signal`] and [`check_dictionary`] on `T = supp(c)`.
pub fn check_all(
    phi: &DenseMatrix,
    c: &SparseSignal,
    l: usize,
    a: f64,
    delta: f64,
    mode: &CheckMode,
) -> Result<TheoremReport> {
    if c.len() != phi.cols() {
        return Err(Error::dims(format!("signal length {} vs {} columns", c.len(), phi.cols())));
    }
    let mut report = check_dictionary(phi, c.support(), l, a, delta, mode)?;
    let k = c.sparsity();
    let sig = check_signal(c, delta);
    if k <= 3 && delta >= 1.0 / (2.0 * (k as f64).sqrt() + 2.0) {
        report
            .warnings
            .push("delta does not satisfy the small-K bound; exact recovery is not implied".to_string());
    }
    report.signal = Some(sig);
    Ok(report)
}

/// Outcome of checking the two bounds implied by the dictionary conditions.
#[derive(Clone, Debug, PartialEq)]
pub enum AppendixCheck {
    /// The norm or projection conditions fail for this `I`; nothing is
    /// implied.
    PreconditionFailed,
    Checked {
        /// `‖Φ_I* Φ_{T∖I}‖`.
        cross_gram: f64,
        /// `‖Φ_I⁺ Φ_{T∖I}‖`.
        pinv_cross: f64,
        cross_gram_ok: bool,
        pinv_cross_ok: bool,
    },
}

impl AppendixCheck {
    pub fn pass(&self) -> Option<bool> {
        match self {
            AppendixCheck::PreconditionFailed => None,
            AppendixCheck::Checked {
                cross_gram_ok,
                pinv_cross_ok,
                ..
            } => Some(*cross_gram_ok && *pinv_cross_ok),
        }
    }
}

/// For one candidate set `i_set`, checks that `‖Φ_I‖ ≤ A`, `‖Φ_I⁺‖ ≤ A` and
/// `‖Φ_I Φ_I⁺ Φ_{T∖I}‖ ≤ δ/A` imply `‖Φ_I* Φ_{T∖I}‖ ≤ δ` and
/// `‖Φ_I⁺ Φ_{T∖I}‖ ≤ δ`. Comparisons allow a relative rounding slack of
/// `1e-10`.
pub fn verify_appendix_bounds(
    phi: &DenseMatrix,
    i_set: &[usize],
    t: &[usize],
    delta: f64,
    a: f64,
) -> Result<AppendixCheck> {
    let f = svd(&phi.select_columns(i_set)?)?;
    let outside: Vec<usize> = t.iter().copied().filter(|i| !i_set.contains(i)).collect();
    let pinv = if f.rank > 0 { 1.0 / f.sigma_min_nonzero() } else { 0.0 };
    let proj = range_projection_norm(&f, phi, &outside)?;
    if f.sigma_max() > a || pinv > a || proj > delta / a {
        return Ok(AppendixCheck::PreconditionFailed);
    }
    if outside.is_empty() {
        return Ok(AppendixCheck::Checked {
            cross_gram: 0.0,
            pinv_cross: 0.0,
            cross_gram_ok: true,
            pinv_cross_ok: true,
        });
    }
    let sub = phi.select_columns(i_set)?;
    let x = phi.select_columns(&outside)?;
    let cross_gram = svd(&sub.transpose().matmul(&x)?)?.sigma_max();
    let pinv_cross = svd(&f.pseudo_inverse().matmul(&x)?)?.sigma_max();
    let limit = delta * (1.0 + 1e-10) + 1e-14;
    Ok(AppendixCheck::Checked {
        cross_gram,
        pinv_cross,
        cross_gram_ok: cross_gram <= limit,
        pinv_cross_ok: pinv_cross <= limit,
    })
}

/// Default `A` used by [`construct_theorem_instance`]: `0.95·√L`.
pub fn default_a_bound(l: usize) -> f64 {
    0.95 * (l as f64).sqrt()
}

/// [`construct_theorem_instance_with`] using [`default_a_bound`].
pub fn construct_theorem_instance(
    m: usize,
    n: usize,
    k: usize,
    l: usize,
    rng: &mut RngStream,
) -> Result<(DenseMatrix, SparseSignal, TheoremReport)> {
    construct_theorem_instance_with(m, n, k, l, default_a_bound(l), rng)
}

/// Searches for an `M×N` dictionary and `K`-sparse signal whose exhaustive
/// [`check_all`] report passes with constant `a`.
///
/// Candidates start from a random orthonormal basis of `ℝᴹ`. The support
/// columns are `K` basis vectors; the other columns are the remaining basis
/// vectors plus random `±1/√(M−K)` sign vectors in their span. Everything is
/// mildly perturbed, renormalized and placed at random column positions. `δ`
/// is the midpoint between the measured `δ` and the largest value the signal
/// allows. The search gives up
/// after [`SEARCH_BUDGET`] candidates.
pub fn construct_theorem_instance_with(
    m: usize,
    n: usize,
    k: usize,
    l: usize,
    a: f64,
    rng: &mut RngStream,
) -> Result<(DenseMatrix, SparseSignal, TheoremReport)> {
    if k == 0 || k > l || l >= m || m > n {
        return Err(Error::invalid(format!("need 1 <= K={k} <= L={l} < M={m} <= N={n}")));
    }
    if n > EXHAUSTIVE_MAX_N || l > EXHAUSTIVE_MAX_L {
        return Err(Error::invalid(format!(
            "certified instances need N <= {EXHAUSTIVE_MAX_N} and L <= {EXHAUSTIVE_MAX_L}"
        )));
    }
    if !(a >= 1.0 && a * a < l as f64) {
        return Err(Error::invalid(format!("A={a} must satisfy 1 <= A < sqrt(L)")));
    }
    let mut best = f64::NEG_INFINITY;
    for _ in 0..SEARCH_BUDGET {
        let (phi, c) = candidate(m, n, k, rng)?;
        let hi = delta_ceiling(&c);
        let probe = check_dictionary(&phi, c.support(), l, a, hi, &CheckMode::Exhaustive)?;
        if !(probe.sigma_max.pass() && probe.pinv_norm.pass()) {
            best = best.max(probe.sigma_max.slack.min(probe.pinv_norm.slack));
            continue;
        }
        let lo = probe.measured_delta.max(1e-9);
        if lo >= hi {
            best = best.max(hi - lo);
            continue;
        }
        let delta = 0.5 * (lo + hi);
        let report = check_all(&phi, &c, l, a, delta, &CheckMode::Exhaustive)?;
        if report.certified() {
            return Ok((phi, c, report));
        }
        best = best.max(report.min_slack());
    }
    Err(Error::SearchExhausted {
        candidates: SEARCH_BUDGET,
        best: format!("best minimum slack {best:e}"),
    })
}

fn candidate(m: usize, n: usize, k: usize, rng: &mut RngStream) -> Result<(DenseMatrix, SparseSignal)> {
    let g = DenseMatrix::from_fn(m, m, |_, _| rng.standard_normal());
    let q = DenseMatrix::from_nalgebra(g.into_nalgebra().qr().q())?;
    let d = m - k;
    let mut cols: Vec<Vec<f64>> = (0..m).map(|j| q.column(j).to_vec()).collect();
    for _ in m..n {
        let mut v = vec![0.0; m];
        for j in k..m {
            let s = if rng.below(2) == 0 { 1.0 } else { -1.0 } / (d as f64).sqrt();
            for (vi, qi) in v.iter_mut().zip(q.column(j)) {
                *vi += s * qi;
            }
        }
        cols.push(v);
    }
    let eps = rng.uniform(0.0, 0.02);
    for col in &mut cols {
        for v in col.iter_mut() {
            *v += eps * rng.standard_normal() / (m as f64).sqrt();
        }
        let nrm = norm2(col);
        col.iter_mut().for_each(|v| *v /= nrm);
    }
    let perm = rng.choose_indices(n, n);
    let mut placed = vec![Vec::new(); n];
    for (src, &dst) in perm.iter().enumerate() {
        placed[dst] = std::mem::take(&mut cols[src]);
    }
    let data: Vec<f64> = placed.into_iter().flatten().collect();
    let phi = DenseMatrix::from_column_major(m, n, data)?;

    let mut support: Vec<usize> = perm[..k].to_vec();
    support.sort_unstable();
    let entries: Vec<f64> = (0..k)
        .map(|_| {
            let mag = rng.uniform(1.0, 2.0);
            if rng.below(2) == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    Ok((phi, SparseSignal::new(n, support, &entries)?))
}

/// Largest `δ` the signal allows: `min(1/(3√K), min|c_i|/(3‖c‖))`, kept
/// below `1/(2√K+2)` when `K ≤ 3`.
fn delta_ceiling(c: &SparseSignal) -> f64 {
    let kf = c.sparsity() as f64;
    let min_abs = c
        .support_values()
        .iter()
        .map(|v| v.abs())
        .fold(f64::INFINITY, f64::min);
    let mut hi = (1.0 / (3.0 * kf.sqrt())).min(min_abs / (3.0 * c.norm()));
    if c.sparsity() <= 3 {
        hi = hi.min(0.99 / (2.0 * kf.sqrt() + 2.0));
    }
    hi
}
