use std::collections::HashSet;

use super::{default_max_iterations, select_top, PartInvOptions, RecoveryResult, Termination};
use crate::error::{Error, Result};
use crate::linalg::{norm2, DenseMatrix, LeastSquaresMethod};

/// Least-squares inversion on a candidate set: returns `ĉ_I = Φ_I⁺ y` (in the
/// order of `set`) and the residual `r = y − Φ_I ĉ_I`.
pub fn partial_inversion(
    phi: &DenseMatrix,
    y: &[f64],
    set: &[usize],
    solver: &LeastSquaresMethod,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let sub = phi.select_columns(set)?;
    let coef = solver.solve(&sub, y)?;
    let fitted = sub.mul_vec(&coef)?;
    let resid = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    Ok((coef, resid))
}

pub(super) fn validate(phi: &DenseMatrix, y: &[f64], k: usize, opts: &PartInvOptions) -> Result<()> {
    let m = phi.rows();
    if y.len() != m {
        return Err(Error::dims(format!("y has length {} but Φ has {m} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("measurements"));
    }
    if k == 0 {
        return Err(Error::invalid("sparsity K must be at least 1"));
    }
    if opts.l < k || opts.l >= m || opts.l > phi.cols() {
        return Err(Error::invalid(format!(
            "L={} must satisfy K={k} <= L < M={m} (and L <= N={})",
            opts.l,
            phi.cols()
        )));
    }
    if !(opts.residual_tol >= 0.0) {
        return Err(Error::invalid("residual tolerance must be nonnegative"));
    }
    Ok(())
}

/// Shared PartInv iteration. `reselect` maps the combined estimate (inverted
/// values on the current set, residual proxy elsewhere) to the next
/// candidate set.
pub(super) fn run(
    phi: &DenseMatrix,
    y: &[f64],
    k: usize,
    opts: &PartInvOptions,
    initial: Vec<usize>,
    reselect: impl Fn(&[f64]) -> Result<Vec<usize>>,
) -> Result<RecoveryResult> {
    let max_iter = opts.max_iterations.unwrap_or_else(|| default_max_iterations(k)).max(1);
    let tol = opts.residual_tol * norm2(y);
    let mut trace = Vec::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut current = initial;
    let mut iterations = 0;

    let (termination, final_set, final_coef) = loop {
        let (coef, resid) = partial_inversion(phi, y, &current, &opts.solver)?;
        iterations += 1;
        if opts.record_trace {
            trace.push(current.clone());
        }
        if norm2(&resid) <= tol {
            break (Termination::ResidualConverged, current, Some(coef));
        }
        let mut combined = phi.tr_mul_vec(&resid)?;
        for (&i, &c) in current.iter().zip(&coef) {
            combined[i] = c;
        }
        let next = reselect(&combined)?;
        if next == current {
            break (Termination::SupportStagnated, current, Some(coef));
        }
        if visited.contains(&next) {
            break (Termination::SupportStagnated, next, None);
        }
        if iterations >= max_iter {
            break (Termination::MaxIterations, next, None);
        }
        visited.insert(std::mem::replace(&mut current, next));
    };

    let final_coef = match final_coef {
        Some(c) => c,
        None => partial_inversion(phi, y, &final_set, &opts.solver)?.0,
    };
    finalize(phi, y, k, &final_set, final_coef, &opts.solver, iterations, termination, trace)
}

/// Keeps the `K` largest inverted coefficients and re-solves least squares
/// on those columns.
#[allow(clippy::too_many_arguments)]
fn finalize(
    phi: &DenseMatrix,
    y: &[f64],
    k: usize,
    set: &[usize],
    coef: Vec<f64>,
    solver: &LeastSquaresMethod,
    iterations: usize,
    termination: Termination,
    trace: Vec<Vec<usize>>,
) -> Result<RecoveryResult> {
    let keep = select_top(&coef, k.min(set.len()));
    let support: Vec<usize> = keep.iter().map(|&p| set[p]).collect();
    let (values, resid) = if support.len() == set.len() {
        let fitted = phi.select_columns(set)?.mul_vec(&coef)?;
        (coef, y.iter().zip(&fitted).map(|(a, b)| a - b).collect::<Vec<_>>())
    } else {
        partial_inversion(phi, y, &support, solver)?
    };
    let mut estimate = vec![0.0; phi.cols()];
    for (&i, &v) in support.iter().zip(&values) {
        estimate[i] = v;
    }
    Ok(RecoveryResult {
        estimate,
        support,
        iterations,
        residual_norm: norm2(&resid),
        termination,
        trace,
    })
}

/// Partial Inversion.
///
/// Starts from the `L` largest entries of `Φᵀy`, then repeats: solve least
/// squares on the candidate set `I`, correlate the residual with the
/// remaining columns, and take the `L` largest entries of the combined
/// estimate as the next `I`. Stops when the residual drops below
/// `residual_tol·‖y‖`, when `I` repeats, or after `max_iterations`
/// inversions; the output is the best `K`-term fit on the final set.
pub fn partinv(phi: &DenseMatrix, y: &[f64], k: usize, opts: &PartInvOptions) -> Result<RecoveryResult> {
    validate(phi, y, k, opts)?;
    let proxy = phi.tr_mul_vec(y)?;
    let l = opts.l;
    run(phi, y, k, opts, select_top(&proxy, l), |c| Ok(select_top(c, l)))
}
