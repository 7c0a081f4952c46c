use std::collections::HashSet;

use super::partinv::partial_inversion;
use super::{select_top, RecoveryResult, Termination, DEFAULT_RESIDUAL_TOL};
use crate::error::{Error, Result};
use crate::linalg::{norm2, DenseMatrix, LeastSquaresMethod};

/// Compressive Sampling Matching Pursuit.
///
/// Each iteration merges the `2K` largest residual correlations with the
/// current support, solves least squares on the merged set and prunes to
/// the `K` largest coefficients. Stops on the same rules as PartInv.
pub fn cosamp(phi: &DenseMatrix, y: &[f64], k: usize, max_iterations: usize) -> Result<RecoveryResult> {
    let (m, n) = (phi.rows(), phi.cols());
    if y.len() != m {
        return Err(Error::dims(format!("y has length {} but Φ has {m} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("measurements"));
    }
    if k == 0 || k >= m || k > n {
        return Err(Error::invalid(format!("K={k} must satisfy 1 <= K < M={m}")));
    }
    let solver = LeastSquaresMethod::Direct;
    let tol = DEFAULT_RESIDUAL_TOL * norm2(y);
    let mut support: Vec<usize> = Vec::new();
    let mut resid = y.to_vec();
    let mut values: Vec<f64>;
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut iterations = 0;

    let termination = loop {
        let proxy = phi.tr_mul_vec(&resid)?;
        let mut merged = select_top(&proxy, (2 * k).min(n));
        merged.extend_from_slice(&support);
        merged.sort_unstable();
        merged.dedup();
        let (b, _) = partial_inversion(phi, y, &merged, &solver)?;
        let keep = select_top(&b, k);
        let next: Vec<usize> = keep.iter().map(|&p| merged[p]).collect();
        let kept: Vec<f64> = keep.iter().map(|&p| b[p]).collect();
        let fitted = phi.select_columns(&next)?.mul_vec(&kept)?;
        resid = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        iterations += 1;
        let previous = std::mem::replace(&mut support, next);
        values = kept;
        if norm2(&resid) <= tol {
            break Termination::ResidualConverged;
        }
        if support == previous || visited.contains(&support) {
            break Termination::SupportStagnated;
        }
        if iterations >= max_iterations.max(1) {
            break Termination::MaxIterations;
        }
        visited.insert(previous);
    };

    let mut estimate = vec![0.0; n];
    for (&i, &v) in support.iter().zip(&values) {
        estimate[i] = v;
    }
    Ok(RecoveryResult {
        estimate,
        support,
        iterations,
        residual_norm: norm2(&resid),
        termination,
        trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recovery::success;
    use crate::sensing::{gaussian_matrix, random_sparse_signal, RngStream};

    #[test]
    fn recovers_easy_gaussian() {
        let mut rng = RngStream::new(11, &[0]);
        let phi = gaussian_matrix(64, 128, &mut rng).unwrap();
        let c = random_sparse_signal(128, 6, &mut rng).unwrap();
        let y = phi.mul_vec(c.values()).unwrap();
        let out = cosamp(&phi, &y, 6, 30).unwrap();
        assert!(success(&c, &out.estimate));
        assert_eq!(out.support, c.support());
    }

    #[test]
    fn output_is_k_sparse() {
        let mut rng = RngStream::new(12, &[0]);
        let phi = gaussian_matrix(20, 100, &mut rng).unwrap();
        let c = random_sparse_signal(100, 12, &mut rng).unwrap();
        let y = phi.mul_vec(c.values()).unwrap();
        let out = cosamp(&phi, &y, 12, 30).unwrap();
        assert_eq!(out.support.len(), 12);
        assert!(out.iterations <= 30);
    }

    #[test]
    fn rejects_bad_sparsity() {
        let phi = DenseMatrix::identity(4);
        assert!(cosamp(&phi, &[1.0; 4], 0, 10).is_err());
        assert!(cosamp(&phi, &[1.0; 4], 4, 10).is_err());
    }
}
