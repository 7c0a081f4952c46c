//! Sensing-matrix families, signal ensembles and acquisition operators.
//!
//! The acquisition model is `y = S·H·Ψ·c`: `Ψ` is a synthesis basis, `H` a
//! blur or anti-aliasing filter, `S` a subsampling operator. Images are
//! vectorized row-major (`pixel (r, c)` ↦ `r·side + c`) and all filtering is
//! circular.

mod dmat;
mod rng;

pub use dmat::{format_dmat, parse_dmat, read_dmat, read_vector, write_dmat, write_vector};
pub use rng::RngStream;

use crate::error::{Error, Result};
use crate::linalg::{normalize_columns, norm2, DenseMatrix};

/// Smoothing kernel used for the 1D filter-and-downsample example.
pub const SMOOTHING_KERNEL_5: [f64; 5] = [0.1, 0.2, 0.4, 0.2, 0.1];

/// Symmetric 5×5 near-delta blur: 0.29 at the centre, 0.02 elsewhere.
/// Entries sum to 0.77 and are deliberately not renormalized.
pub fn near_delta_blur_kernel() -> [[f64; 5]; 5] {
    let mut k = [[0.02; 5]; 5];
    k[2][2] = 0.29;
    k
}

/// A length-`N` coefficient vector with an explicit support set.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSignal {
    values: Vec<f64>,
    support: Vec<usize>,
}

impl SparseSignal {
    /// Signal with `entries[i]` at `support[i]` and zeros elsewhere.
    pub fn new(len: usize, support: Vec<usize>, entries: &[f64]) -> Result<Self> {
        if support.len() != entries.len() {
            return Err(Error::dims(format!(
                "{} support indices but {} entries",
                support.len(),
                entries.len()
            )));
        }
        if support.len() > len {
            return Err(Error::invalid("support larger than signal length"));
        }
        let mut pairs: Vec<(usize, f64)> = support.into_iter().zip(entries.iter().copied()).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("support indices must be distinct"));
        }
        if pairs.last().is_some_and(|p| p.0 >= len) {
            return Err(Error::invalid("support index out of range"));
        }
        if pairs.iter().any(|p| !p.1.is_finite()) {
            return Err(Error::NonFinite("signal"));
        }
        let mut values = vec![0.0; len];
        for &(i, v) in &pairs {
            values[i] = v;
        }
        Ok(SparseSignal {
            values,
            support: pairs.into_iter().map(|p| p.0).collect(),
        })
    }

    /// Support taken as the nonzero entries of `values`.
    pub fn from_dense(values: Vec<f64>) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect();
        SparseSignal { values, support }
    }

    pub fn zeros(len: usize) -> Self {
        SparseSignal {
            values: vec![0.0; len],
            support: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `|support|`.
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Entries on the support, in support order.
    pub fn support_values(&self) -> Vec<f64> {
        self.support.iter().map(|&i| self.values[i]).collect()
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.values)
    }
}

/// M×N matrix of i.i.d. standard normals with unit-norm columns.
pub fn gaussian_matrix(m: usize, n: usize, rng: &mut RngStream) -> Result<DenseMatrix> {
    if m == 0 || m > n {
        return Err(Error::invalid(format!(
            "gaussian ensemble needs 1 <= M <= N, got M={m}, N={n}"
        )));
    }
    let data: Vec<f64> = (0..m * n).map(|_| rng.standard_normal()).collect();
    normalize_columns(&DenseMatrix::from_column_major(m, n, data)?)
}

/// Parameters of the correlated column-subset ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatedBlockParams {
    pub subsets: usize,
    /// Variance of the noise on the unit "heavy" rows of each block.
    pub heavy_noise_variance: f64,
    /// Variance of the noise added to every entry; `None` means `1/M`.
    pub background_noise_variance: Option<f64>,
    pub normalize: bool,
}

impl Default for CorrelatedBlockParams {
    fn default() -> Self {
        CorrelatedBlockParams {
            subsets: 16,
            heavy_noise_variance: 0.0625,
            background_noise_variance: None,
            normalize: true,
        }
    }
}

/// Row range of block `j` when `m` rows are split into `subsets` contiguous
/// blocks. Equal blocks of `m/subsets` rows when `subsets` divides `m`.
pub fn block_rows(m: usize, subsets: usize, j: usize) -> std::ops::Range<usize> {
    (j * m / subsets)..((j + 1) * m / subsets)
}

/// Block-structured matrix with heavy intra-subset and light cross-subset
/// column correlation.
///
/// Columns are split into `subsets` contiguous groups. Group `j` has its
/// block of rows set to `1 + N(0, heavy)`, zeros elsewhere; `N(0, background)`
/// is then added to every entry and columns are normalized.
pub fn correlated_block_matrix(
    m: usize,
    n: usize,
    params: &CorrelatedBlockParams,
    rng: &mut RngStream,
) -> Result<DenseMatrix> {
    let s = params.subsets;
    if s == 0 || n % s != 0 {
        return Err(Error::invalid(format!(
            "{s} subsets must evenly divide N={n}"
        )));
    }
    if m < s || m > n {
        return Err(Error::invalid(format!(
            "correlated ensemble needs {s} <= M <= N, got M={m}, N={n}"
        )));
    }
    if !(params.heavy_noise_variance >= 0.0) {
        return Err(Error::invalid("heavy noise variance must be nonnegative"));
    }
    let background = params.background_noise_variance.unwrap_or(1.0 / m as f64);
    if !(background >= 0.0) {
        return Err(Error::invalid("background noise variance must be nonnegative"));
    }
    let heavy_std = params.heavy_noise_variance.sqrt();
    let bg_std = background.sqrt();
    let group = n / s;
    let mut data = Vec::with_capacity(m * n);
    for col in 0..n {
        let rows = block_rows(m, s, col / group);
        for row in 0..m {
            let heavy = rng.standard_normal();
            let light = rng.standard_normal();
            let base = if rows.contains(&row) {
                1.0 + heavy_std * heavy
            } else {
                0.0
            };
            data.push(base + bg_std * light);
        }
    }
    let a = DenseMatrix::from_column_major(m, n, data)?;
    if params.normalize {
        normalize_columns(&a)
    } else {
        Ok(a)
    }
}

/// Filter-and-downsample operator: `(N/shift) × N`, row `i` holds `kernel`
/// centred on column `shift·i` with circular wrap.
pub fn filter_downsample_1d(kernel: &[f64], n: usize, shift: usize) -> Result<DenseMatrix> {
    if kernel.is_empty() || kernel.len() % 2 == 0 {
        return Err(Error::invalid("kernel length must be odd"));
    }
    if shift == 0 || n == 0 || n % shift != 0 {
        return Err(Error::invalid(format!(
            "shift {shift} must be positive and divide N={n}"
        )));
    }
    if kernel.len() > n {
        return Err(Error::invalid("kernel longer than the signal"));
    }
    let half = kernel.len() / 2;
    let rows = n / shift;
    let mut out = vec![0.0; rows * n];
    for i in 0..rows {
        for (t, &k) in kernel.iter().enumerate() {
            let col = (shift * i + n + t - half) % n;
            // row-major
            out[i * n + col] += k;
        }
    }
    DenseMatrix::from_row_major(rows, n, out)
}

/// Circular 2D filtering of a row-major vectorized `side × side` image:
/// `(Hx)[r, c] = Σ_{a,b} k[a][b] · x[r+a-2, c+b-2]`, indices mod `side`.
pub fn blur_operator_2d(side: usize, kernel: &[[f64; 5]; 5]) -> Result<DenseMatrix> {
    if side < 5 {
        return Err(Error::invalid(format!("image side {side} must be at least 5")));
    }
    let n = side * side;
    let mut out = vec![0.0; n * n];
    for r in 0..side {
        for c in 0..side {
            let row = r * side + c;
            for (a, krow) in kernel.iter().enumerate() {
                for (b, &k) in krow.iter().enumerate() {
                    let rr = (r + side + a - 2) % side;
                    let cc = (c + side + b - 2) % side;
                    out[row * n + rr * side + cc] += k;
                }
            }
        }
    }
    DenseMatrix::from_row_major(n, n, out)
}

/// A 4×4 binary sampling tile, replicated to cover the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingPattern {
    pub base: [[u8; 4]; 4],
    pub replication: usize,
}

impl SamplingPattern {
    pub fn new(base: [[u8; 4]; 4], replication: usize) -> Result<Self> {
        if base.iter().flatten().any(|&b| b > 1) {
            return Err(Error::invalid("sampling mask entries must be 0 or 1"));
        }
        if replication == 0 {
            return Err(Error::invalid("replication must be positive"));
        }
        Ok(SamplingPattern { base, replication })
    }

    /// The tile with `sixteenths` ones out of 16, for the seven rates
    /// 2/16, 4/16, …, 14/16, replicated 8 times per axis.
    pub fn standard(sixteenths: usize) -> Result<Self> {
        let base = match sixteenths {
            2 => [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
            4 => [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
            6 => [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 0, 0], [0, 0, 1, 0]],
            8 => [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]],
            10 => [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]],
            12 => [[1, 1, 0, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 0, 1, 1]],
            14 => [[1, 1, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1], [0, 1, 1, 1]],
            other => {
                return Err(Error::invalid(format!(
                    "no standard sampling pattern for rate {other}/16 (use 2, 4, ..., 14)"
                )))
            }
        };
        SamplingPattern::new(base, 8)
    }

    /// All standard rates, in sixteenths.
    pub const STANDARD_RATES: [usize; 7] = [2, 4, 6, 8, 10, 12, 14];

    pub fn ones(&self) -> usize {
        self.base.iter().flatten().filter(|&&b| b == 1).count()
    }

    /// `ones / 16`.
    pub fn rate(&self) -> f64 {
        self.ones() as f64 / 16.0
    }

    pub fn side(&self) -> usize {
        4 * self.replication
    }

    /// The replicated `side × side` mask, row-major.
    pub fn mask(&self) -> Vec<u8> {
        let side = self.side();
        (0..side * side)
            .map(|p| self.base[(p / side) % 4][(p % side) % 4])
            .collect()
    }
}

/// Binary selection matrix with one row per sampled pixel, rows in row-major
/// scan order of the replicated mask.
pub fn sampling_operator(pattern: &SamplingPattern, side: usize) -> Result<DenseMatrix> {
    if side != pattern.side() {
        return Err(Error::invalid(format!(
            "image side {side} does not match pattern side {}",
            pattern.side()
        )));
    }
    let n = side * side;
    let picked: Vec<usize> = pattern
        .mask()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(p, _)| p)
        .collect();
    if picked.is_empty() {
        return Err(Error::invalid("sampling pattern selects no pixels"));
    }
    let mut data = vec![0.0; picked.len() * n];
    for (row, &p) in picked.iter().enumerate() {
        data[row * n + p] = 1.0;
    }
    DenseMatrix::from_row_major(picked.len(), n, data)
}

/// `Φ = S·H·Ψ`.
pub fn compose_sensing(s: &DenseMatrix, h: &DenseMatrix, psi: &DenseMatrix) -> Result<DenseMatrix> {
    s.matmul(h)?.matmul(psi)
}

/// `|ΦᵀΦ|`, made exactly symmetric.
pub fn correlation_map(phi: &DenseMatrix) -> DenseMatrix {
    let g = phi.gram();
    let n = g.cols();
    DenseMatrix::from_fn(n, n, |i, j| {
        if i <= j {
            g.get(i, j).abs()
        } else {
            g.get(j, i).abs()
        }
    })
}

/// `K` nonzeros at uniformly random positions, values i.i.d. `N(0, 1)`.
pub fn random_sparse_signal(n: usize, k: usize, rng: &mut RngStream) -> Result<SparseSignal> {
    if k > n {
        return Err(Error::invalid(format!("sparsity K={k} exceeds length N={n}")));
    }
    let support = rng.sample_indices(n, k);
    let entries: Vec<f64> = (0..k).map(|_| rng.standard_normal()).collect();
    SparseSignal::new(n, support, &entries)
}

/// Nonzeros concentrated on a few contiguous column subsets.
///
/// `⌊K/active⌋` nonzeros go into each of `active` random subsets and the
/// remaining `K mod active` into one further subset, distinct from the
/// others. Positions inside a subset are uniform; values `N(0, 1)`.
pub fn clustered_sparse_signal(
    n: usize,
    k: usize,
    subsets: usize,
    active: usize,
    rng: &mut RngStream,
) -> Result<SparseSignal> {
    if subsets == 0 || n % subsets != 0 {
        return Err(Error::invalid(format!("{subsets} subsets must evenly divide N={n}")));
    }
    if k == 0 {
        return Ok(SparseSignal::zeros(n));
    }
    if active == 0 {
        return Err(Error::invalid("at least one active subset is required"));
    }
    let group = n / subsets;
    let per = k / active;
    let rem = k % active;
    let groups_needed = active + usize::from(rem > 0);
    if per > group || rem > group || groups_needed > subsets {
        return Err(Error::invalid(format!(
            "K={k} does not fit in {active} active subsets of {group} columns (+1 for the remainder)"
        )));
    }
    let groups = rng.choose_indices(subsets, groups_needed);
    let mut support = Vec::with_capacity(k);
    for (slot, &g) in groups.iter().enumerate() {
        let count = if slot < active { per } else { rem };
        support.extend(rng.sample_indices(group, count).into_iter().map(|i| g * group + i));
    }
    support.sort_unstable();
    let entries: Vec<f64> = (0..k).map(|_| rng.standard_normal()).collect();
    SparseSignal::new(n, support, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_columns_unit_norm() {
        let mut rng = RngStream::new(1, &[0]);
        let phi = gaussian_matrix(128, 256, &mut rng).unwrap();
        assert_eq!((phi.rows(), phi.cols()), (128, 256));
        assert!(phi.column_norms().iter().all(|n| (n - 1.0).abs() < 1e-12));
    }

    #[test]
    fn gaussian_one_by_one() {
        let mut rng = RngStream::new(2, &[0]);
        let phi = gaussian_matrix(1, 1, &mut rng).unwrap();
        assert!((phi.get(0, 0).abs() - 1.0).abs() < 1e-15);
        assert!(gaussian_matrix(3, 2, &mut rng).is_err());
    }

    #[test]
    fn gaussian_raw_mean_near_zero() {
        // Entries before normalization are the raw draws of the same stream.
        let (m, n) = (64, 256);
        let mut rng = RngStream::new(5, &[0]);
        let raw: Vec<f64> = (0..m * n).map(|_| rng.standard_normal()).collect();
        let mean = raw.iter().sum::<f64>() / (m * n) as f64;
        assert!(mean.abs() < 4.0 / ((m * n) as f64).sqrt());
    }

    #[test]
    fn correlated_block_shape_and_structure() {
        let mut rng = RngStream::new(3, &[0]);
        let phi = correlated_block_matrix(64, 256, &CorrelatedBlockParams::default(), &mut rng).unwrap();
        assert_eq!((phi.rows(), phi.cols()), (64, 256));
        assert!(phi.column_norms().iter().all(|n| (n - 1.0).abs() < 1e-12));
    }

    #[test]
    fn correlated_block_noiseless_is_exact() {
        let params = CorrelatedBlockParams {
            heavy_noise_variance: 0.0,
            background_noise_variance: Some(0.0),
            normalize: false,
            ..Default::default()
        };
        let mut rng = RngStream::new(4, &[0]);
        let phi = correlated_block_matrix(32, 64, &params, &mut rng).unwrap();
        for col in 0..64 {
            let g = col / 4;
            for row in 0..32 {
                let expect = if row / 2 == g { 1.0 } else { 0.0 };
                assert_eq!(phi.get(row, col), expect);
            }
        }
    }

    #[test]
    fn correlated_block_rejects_bad_dims() {
        let mut rng = RngStream::new(4, &[0]);
        let p = CorrelatedBlockParams::default();
        assert!(correlated_block_matrix(64, 250, &p, &mut rng).is_err());
        assert!(correlated_block_matrix(8, 256, &p, &mut rng).is_err());
    }

    #[test]
    fn uneven_block_rows_cover_all_rows() {
        let m = 51;
        let mut covered = vec![0; m];
        for j in 0..16 {
            let r = block_rows(m, 16, j);
            assert!(r.len() == 3 || r.len() == 4);
            for i in r {
                covered[i] += 1;
            }
        }
        assert!(covered.iter().all(|&c| c == 1));
    }

    #[test]
    fn filter_downsample_delta_kernel() {
        let op = filter_downsample_1d(&[1.0], 8, 2).unwrap();
        assert_eq!((op.rows(), op.cols()), (4, 8));
        for i in 0..4 {
            for j in 0..8 {
                assert_eq!(op.get(i, j), if j == 2 * i { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn filter_downsample_smoothing_kernel() {
        let op = filter_downsample_1d(&SMOOTHING_KERNEL_5, 256, 2).unwrap();
        assert_eq!((op.rows(), op.cols()), (128, 256));
        for i in 0..128 {
            let s: f64 = (0..256).map(|j| op.get(i, j)).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        let nz: Vec<usize> = (0..256).filter(|&j| op.get(0, j) != 0.0).collect();
        assert_eq!(nz, vec![0, 1, 2, 254, 255]);
        assert_eq!(op.get(0, 254), 0.1);
        assert_eq!(op.get(0, 0), 0.4);
        assert!(filter_downsample_1d(&[0.5, 0.5], 8, 2).is_err());
        assert!(filter_downsample_1d(&[1.0], 9, 2).is_err());
    }

    #[test]
    fn blur_delta_is_identity() {
        let mut k = [[0.0; 5]; 5];
        k[2][2] = 1.0;
        let h = blur_operator_2d(6, &k).unwrap();
        assert_eq!(h, DenseMatrix::identity(36));
    }

    #[test]
    fn blur_rows_sum_and_shift_commute() {
        let side = 8;
        let h = blur_operator_2d(side, &near_delta_blur_kernel()).unwrap();
        for r in 0..side * side {
            let s: f64 = (0..side * side).map(|c| h.get(r, c)).sum();
            assert!((s - 0.77).abs() < 1e-12);
        }
        // Cyclic shift of the image down by one row.
        let n = side * side;
        let shift = DenseMatrix::from_fn(n, n, |p, q| {
            let (pr, pc) = (p / side, p % side);
            let src = ((pr + side - 1) % side) * side + pc;
            if q == src {
                1.0
            } else {
                0.0
            }
        });
        let lhs = h.matmul(&shift).unwrap();
        let rhs = shift.matmul(&h).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15);
    }

    #[test]
    fn sampling_operator_rates() {
        for (rate, rows) in [(8, 512), (2, 128)] {
            let p = SamplingPattern::standard(rate).unwrap();
            let s = sampling_operator(&p, 32).unwrap();
            assert_eq!(s.rows(), rows);
            assert_eq!(s.rows(), 64 * rate);
            for r in 0..s.rows() {
                let ones = (0..1024).filter(|&c| s.get(r, c) == 1.0).count();
                assert_eq!(ones, 1);
            }
        }
        for rate in SamplingPattern::STANDARD_RATES {
            let p = SamplingPattern::standard(rate).unwrap();
            assert_eq!(p.ones(), rate);
            assert_eq!(p.rate(), rate as f64 / 16.0);
        }
        assert!(SamplingPattern::standard(3).is_err());
    }

    #[test]
    fn all_ones_pattern_is_identity() {
        let p = SamplingPattern::new([[1; 4]; 4], 2).unwrap();
        let s = sampling_operator(&p, 8).unwrap();
        assert_eq!(s, DenseMatrix::identity(64));
        assert!(sampling_operator(&p, 12).is_err());
    }

    #[test]
    fn compose_identity() {
        let i = DenseMatrix::identity(5);
        assert_eq!(compose_sensing(&i, &i, &i).unwrap(), i);
        let bad = DenseMatrix::identity(4);
        assert!(compose_sensing(&i, &bad, &i).is_err());
    }

    #[test]
    fn correlation_map_orthonormal_and_symmetric() {
        let c = correlation_map(&DenseMatrix::identity(6));
        assert_eq!(c, DenseMatrix::identity(6));
        let mut rng = RngStream::new(9, &[0]);
        let phi = gaussian_matrix(20, 40, &mut rng).unwrap();
        let c = correlation_map(&phi);
        assert_eq!(c, c.transpose());
        for i in 0..40 {
            assert!((c.get(i, i) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_signal_cases() {
        let mut rng = RngStream::new(10, &[0]);
        let dense = random_sparse_signal(12, 12, &mut rng).unwrap();
        assert_eq!(dense.support(), &(0..12).collect::<Vec<_>>()[..]);
        let s = random_sparse_signal(256, 26, &mut rng).unwrap();
        assert_eq!(s.sparsity(), 26);
        for (i, v) in s.values().iter().enumerate() {
            assert_eq!(*v != 0.0, s.support().contains(&i));
        }
        assert!(random_sparse_signal(4, 5, &mut rng).is_err());
    }

    #[test]
    fn random_signal_uniform_support() {
        let (n, k, draws) = (16, 4, 10_000);
        let mut counts = vec![0usize; n];
        let mut rng = RngStream::new(11, &[0]);
        for _ in 0..draws {
            for &i in random_sparse_signal(n, k, &mut rng).unwrap().support() {
                counts[i] += 1;
            }
        }
        let p = k as f64 / n as f64;
        let se = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - draws as f64 * p).abs() < 3.0 * se + 1.0, "count {c}");
        }
    }

    fn per_group_counts(s: &SparseSignal, group: usize) -> Vec<usize> {
        let mut counts = vec![0; s.len() / group];
        for &i in s.support() {
            counts[i / group] += 1;
        }
        counts.retain(|&c| c > 0);
        counts.sort_unstable();
        counts
    }

    #[test]
    fn clustered_signal_protocol() {
        let mut rng = RngStream::new(12, &[0]);
        let s = clustered_sparse_signal(256, 8, 16, 4, &mut rng).unwrap();
        assert_eq!(per_group_counts(&s, 16), vec![2, 2, 2, 2]);
        let s = clustered_sparse_signal(256, 9, 16, 4, &mut rng).unwrap();
        assert_eq!(per_group_counts(&s, 16), vec![1, 2, 2, 2, 2]);
        let s = clustered_sparse_signal(256, 0, 16, 4, &mut rng).unwrap();
        assert_eq!(s.sparsity(), 0);
        assert!(s.values().iter().all(|&v| v == 0.0));
        assert!(clustered_sparse_signal(256, 100, 16, 4, &mut rng).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gaussian_matrix(10, 20, &mut RngStream::new(5, &[1, 2])).unwrap();
        let b = gaussian_matrix(10, 20, &mut RngStream::new(5, &[1, 2])).unwrap();
        assert_eq!(a, b);
        let p = CorrelatedBlockParams::default();
        let a = correlated_block_matrix(32, 64, &p, &mut RngStream::new(5, &[3])).unwrap();
        let b = correlated_block_matrix(32, 64, &p, &mut RngStream::new(5, &[3])).unwrap();
        assert_eq!(a, b);
        let a = clustered_sparse_signal(64, 7, 16, 4, &mut RngStream::new(5, &[4])).unwrap();
        let b = clustered_sparse_signal(64, 7, 16, 4, &mut RngStream::new(5, &[4])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sparse_signal_validation() {
        assert!(SparseSignal::new(4, vec![1, 1], &[1.0, 2.0]).is_err());
        assert!(SparseSignal::new(4, vec![4], &[1.0]).is_err());
        assert!(SparseSignal::new(4, vec![1], &[1.0, 2.0]).is_err());
        let s = SparseSignal::new(4, vec![3, 0], &[2.0, -1.0]).unwrap();
        assert_eq!(s.support(), &[0, 3]);
        assert_eq!(s.values(), &[-1.0, 0.0, 0.0, 2.0]);
        assert_eq!(SparseSignal::from_dense(vec![0.0, 1.0, 0.0]).support(), &[1]);
    }
}
