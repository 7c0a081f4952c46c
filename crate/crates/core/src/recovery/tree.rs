use super::partinv::{run, validate};
use super::{PartInvOptions, RecoveryResult};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::wavelet::{set_strength, TreePartition};

/// Union of whole sets taken in descending strength (ties to the lower set
/// index) until at least `min_count` coefficients are covered. Returned
/// sorted.
pub fn select_sets(strengths: &[f64], partition: &TreePartition, min_count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..strengths.len()).collect();
    order.sort_by(|&a, &b| strengths[b].total_cmp(&strengths[a]).then(a.cmp(&b)));
    let mut chosen = Vec::new();
    for s in order {
        if chosen.len() >= min_count {
            break;
        }
        chosen.extend_from_slice(partition.set(s));
    }
    chosen.sort_unstable();
    chosen
}

/// PartInv with candidate sets built from whole coefficient groups.
///
/// Each group is scored by the sum of absolute proxy values over its
/// members; groups are added strongest first until the candidate set holds
/// at least `opts.l` coefficients. Iteration and finalization are as in
/// [`super::partinv`].
pub fn partinv_wavelet(
    phi: &DenseMatrix,
    y: &[f64],
    k: usize,
    partition: &TreePartition,
    opts: &PartInvOptions,
) -> Result<RecoveryResult> {
    if partition.total() != phi.cols() {
        return Err(Error::dims(format!(
            "partition covers {} coefficients but Φ has {} columns",
            partition.total(),
            phi.cols()
        )));
    }
    validate(phi, y, k, opts)?;
    let l = opts.l;
    let pick = |c: &[f64]| -> Result<Vec<usize>> { Ok(select_sets(&set_strength(c, partition)?, partition, l)) };
    let proxy = phi.tr_mul_vec(y)?;
    let initial = pick(&proxy)?;
    run(phi, y, k, opts, initial, pick)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recovery::{success, Termination};
    use crate::sensing::SparseSignal;
    use crate::wavelet::tree_partition;

    #[test]
    fn set_selection_covers_target() {
        let p = tree_partition(32, 5).unwrap();
        let mut strengths = vec![0.0; p.len()];
        strengths[3] = 5.0;
        strengths[20] = 5.0;
        strengths[40] = 1.0;
        let sel = select_sets(&strengths, &p, 30);
        let mut expect: Vec<usize> = p.set(3).iter().chain(p.set(20)).copied().collect();
        expect.sort_unstable();
        assert_eq!(sel, expect);
        assert_eq!(select_sets(&strengths, &p, 42).len(), 42);
        let sel = select_sets(&strengths, &p, 43);
        assert_eq!(sel.len(), 3 * 21);
        assert!(p.set(40).iter().all(|i| sel.contains(i)));
    }

    #[test]
    fn identity_recovers_tree_signal() {
        let p = tree_partition(32, 5).unwrap();
        let phi = DenseMatrix::identity(1024);
        let support: Vec<usize> = p.set(30).to_vec();
        let entries: Vec<f64> = (0..support.len()).map(|i| 1.0 + i as f64).collect();
        let c = SparseSignal::new(1024, support, &entries).unwrap();
        let y = c.values().to_vec();
        let out = partinv_wavelet(&phi, &y, 21, &p, &PartInvOptions::equal_k(21)).unwrap();
        assert!(success(&c, &out.estimate));
        assert_eq!(out.termination, Termination::ResidualConverged);
    }

    #[test]
    fn zero_measurements() {
        let p = tree_partition(32, 5).unwrap();
        let phi = DenseMatrix::identity(1024);
        let out = partinv_wavelet(&phi, &vec![0.0; 1024], 21, &p, &PartInvOptions::equal_k(21)).unwrap();
        assert!(out.estimate.iter().all(|&v| v == 0.0));
        assert_eq!(out.residual_norm, 0.0);
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn partition_size_mismatch() {
        let p = tree_partition(32, 5).unwrap();
        let phi = DenseMatrix::identity(64);
        assert!(partinv_wavelet(&phi, &[0.0; 64], 2, &p, &PartInvOptions::equal_k(2)).is_err());
    }
}
