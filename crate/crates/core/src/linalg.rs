//! Dense linear-algebra kernel.
//!
//! Every matrix in the crate (sensing matrices, bases, acquisition operators,
//! Gram matrices) is a [`DenseMatrix`]: a column-major `f64` matrix with
//! finite entries. Least squares is solved in the minimum-norm sense through a
//! truncated SVD, with a QR shortcut that is only taken when the matrix is
//! provably of full column rank under the same rank tolerance.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Column-major real matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    inner: DMatrix<f64>,
}

impl DenseMatrix {
    /// All-zero matrix. Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        DenseMatrix {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "matrix dimensions must be positive");
        DenseMatrix {
            inner: DMatrix::identity(n, n),
        }
    }

    /// Builds a matrix from `f(row, col)`. Panics on zero dimensions or
    /// non-finite entries.
    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let inner = DMatrix::from_fn(rows, cols, f);
        assert!(
            inner.iter().all(|v| v.is_finite()),
            "matrix entries must be finite"
        );
        DenseMatrix { inner }
    }

    pub fn from_column_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        Self::from_nalgebra(DMatrix::from_vec(rows, cols, data))
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        Self::from_nalgebra(DMatrix::from_row_slice(rows, cols, &data))
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("rows have different lengths"));
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn from_nalgebra(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if inner.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(DenseMatrix { inner })
    }

    pub fn as_nalgebra(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn into_nalgebra(self) -> DMatrix<f64> {
        self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.inner[(row, col)]
    }

    /// Column-major entries.
    pub fn as_slice(&self) -> &[f64] {
        self.inner.as_slice()
    }

    pub fn column(&self, col: usize) -> &[f64] {
        let m = self.rows();
        &self.inner.as_slice()[col * m..(col + 1) * m]
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix {
            inner: self.inner.transpose(),
        }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(DenseMatrix {
            inner: &self.inner * &other.inner,
        })
    }

    /// `self · x`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols() {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols()
            )));
        }
        let x = DVector::from_column_slice(x);
        Ok((&self.inner * x).data.into())
    }

    /// `selfᵀ · y`, the adjoint applied to a measurement-space vector.
    pub fn tr_mul_vec(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.rows() {
            return Err(Error::dims(format!(
                "vector of length {} against {} rows",
                y.len(),
                self.rows()
            )));
        }
        let y = DVector::from_column_slice(y);
        Ok(self.inner.tr_mul(&y).data.into())
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> DenseMatrix {
        DenseMatrix {
            inner: self.inner.tr_mul(&self.inner),
        }
    }

    /// Sub-matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<DenseMatrix> {
        if cols.is_empty() {
            return Err(Error::invalid("column selection is empty"));
        }
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols()) {
            return Err(Error::invalid(format!(
                "column index {bad} out of range for {} columns",
                self.cols()
            )));
        }
        Ok(DenseMatrix {
            inner: self.inner.select_columns(cols),
        })
    }

    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.cols()).map(|j| norm2(self.column(j))).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Largest absolute entry-wise difference; `None` when shapes differ.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Option<f64> {
        if self.inner.shape() != other.inner.shape() {
            return None;
        }
        Some(
            self.inner
                .iter()
                .zip(other.inner.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }
}

fn check_shape(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("matrix dimensions must be positive"));
    }
    if rows * cols != len {
        return Err(Error::dims(format!(
            "{rows}x{cols} matrix needs {} entries, got {len}",
            rows * cols
        )));
    }
    Ok(())
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_finite(v: &[f64], what: &'static str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Reduced SVD `A = U Σ Vᵀ` with singular values sorted nonincreasing.
#[derive(Clone, Debug)]
pub struct SvdFactors {
    /// `rows × min(rows, cols)` left singular vectors.
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    /// `cols × min(rows, cols)` right singular vectors (not transposed).
    pub v: DenseMatrix,
    /// Number of singular values above [`SvdFactors::rank_tolerance`].
    pub rank: usize,
    tolerance: f64,
}

impl SvdFactors {
    /// `max(rows, cols) · ε · σ_max`.
    pub fn rank_tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    /// Smallest singular value above the rank tolerance, or 0 for a
    /// numerically zero matrix.
    pub fn sigma_min_nonzero(&self) -> f64 {
        if self.rank == 0 {
            0.0
        } else {
            self.singular_values[self.rank - 1]
        }
    }

    /// Minimum-norm least-squares solution `A⁺ y`.
    pub fn pinv_apply(&self, y: &[f64]) -> Vec<f64> {
        let u = self.u.as_nalgebra();
        let v = self.v.as_nalgebra();
        let mut x = vec![0.0; v.nrows()];
        for k in 0..self.rank {
            let coef = dot(self.u.column(k), y) / self.singular_values[k];
            for (xi, vi) in x.iter_mut().zip(v.column(k).iter()) {
                *xi += coef * vi;
            }
        }
        debug_assert_eq!(u.nrows(), y.len());
        x
    }

    /// `A⁺` as an explicit `cols × rows` matrix.
    pub fn pseudo_inverse(&self) -> DenseMatrix {
        let u = self.u.as_nalgebra();
        let v = self.v.as_nalgebra();
        let mut out = DMatrix::zeros(v.nrows(), u.nrows());
        for k in 0..self.rank {
            let inv = 1.0 / self.singular_values[k];
            out += (v.column(k) * inv) * u.column(k).transpose();
        }
        DenseMatrix { inner: out }
    }

    /// The rank-truncated left singular vectors, an orthonormal basis of the
    /// column space.
    pub fn range_basis(&self) -> Option<DenseMatrix> {
        if self.rank == 0 {
            return None;
        }
        Some(DenseMatrix {
            inner: self.u.as_nalgebra().columns(0, self.rank).into_owned(),
        })
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        let u = self.u.as_nalgebra();
        let v = self.v.as_nalgebra();
        let sigma = DMatrix::from_diagonal(&DVector::from_column_slice(&self.singular_values));
        DenseMatrix {
            inner: u * sigma * v.transpose(),
        }
    }
}

/// Reduced singular value decomposition.
///
/// Signs are fixed so that the first entry of each left singular vector with
/// magnitude above `1e-12` is positive.
pub fn svd(a: &DenseMatrix) -> Result<SvdFactors> {
    let (m, n) = (a.rows(), a.cols());
    let dec = a
        .inner
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or(Error::SvdNoConvergence)?;
    let (u_raw, v_t_raw) = match (dec.u, dec.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(Error::SvdNoConvergence),
    };
    let s = dec.singular_values;
    let k = s.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]).then(i.cmp(&j)));

    let mut u = DMatrix::zeros(m, k);
    let mut v = DMatrix::zeros(n, k);
    let mut values = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        let mut ucol = u_raw.column(src).into_owned();
        let mut vcol = v_t_raw.row(src).transpose();
        if let Some(first) = ucol.iter().find(|x| x.abs() > 1e-12) {
            if *first < 0.0 {
                ucol.neg_mut();
                vcol.neg_mut();
            }
        }
        u.set_column(dst, &ucol);
        v.set_column(dst, &vcol);
        values.push(s[src].max(0.0));
    }
    let sigma_max = values.first().copied().unwrap_or(0.0);
    let tolerance = m.max(n) as f64 * f64::EPSILON * sigma_max;
    let rank = values.iter().filter(|&&x| x > tolerance).count();
    Ok(SvdFactors {
        u: DenseMatrix { inner: u },
        singular_values: values,
        v: DenseMatrix { inner: v },
        rank,
        tolerance,
    })
}

/// Minimum-norm least-squares solution `x = A⁺ y`.
///
/// First tries a Householder QR of `A` (tall) or `Aᵀ` (wide). It is accepted
/// only when `1/‖R⁻¹‖_F`, a lower bound on `σ_min`, exceeds
/// `max(m,n)·ε·‖R‖_F`, an upper bound on the SVD rank tolerance; in that case
/// the truncated-SVD solution is the ordinary full-rank (or minimum-norm)
/// solution and both routes agree. Everything else goes through the
/// truncated SVD.
pub fn least_squares(a: &DenseMatrix, y: &[f64]) -> Result<Vec<f64>> {
    if a.rows() != y.len() {
        return Err(Error::dims(format!(
            "right-hand side of length {} against {} rows",
            y.len(),
            a.rows()
        )));
    }
    check_finite(y, "right-hand side")?;
    let fast = if a.rows() >= a.cols() {
        full_rank_qr_solve(a, y)
    } else {
        full_row_rank_qr_solve(a, y)
    };
    match fast {
        Some(x) => Ok(x),
        None => Ok(svd(a)?.pinv_apply(y)),
    }
}

/// Inverse of the triangular factor, if it passes the rank certificate.
fn certified_r_inverse(r: &DMatrix<f64>, m: usize, n: usize) -> Option<DMatrix<f64>> {
    let k = r.ncols();
    let mut r_inv = DMatrix::identity(k, k);
    if !r.solve_upper_triangular_mut(&mut r_inv) {
        return None;
    }
    let inv_norm = r_inv.norm();
    let tolerance = m.max(n) as f64 * f64::EPSILON * r.norm();
    (inv_norm.is_finite() && 1.0 / inv_norm > tolerance).then_some(r_inv)
}

/// Minimum-norm solution `Q R⁻ᵀ y` from `Aᵀ = QR`.
fn full_row_rank_qr_solve(a: &DenseMatrix, y: &[f64]) -> Option<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    let qr = a.inner.transpose().qr();
    let r_inv = certified_r_inverse(&qr.r(), m, n)?;
    let z = r_inv.transpose() * DVector::from_column_slice(y);
    let x = qr.q() * z;
    x.iter().all(|v| v.is_finite()).then(|| x.data.into())
}

fn full_rank_qr_solve(a: &DenseMatrix, y: &[f64]) -> Option<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    let qr = a.inner.clone().qr();
    let r_inv = certified_r_inverse(&qr.r(), m, n)?;
    let mut qty = DVector::from_column_slice(y);
    qr.q_tr_mul(&mut qty);
    let x = r_inv * qty.rows(0, n);
    x.iter().all(|v| v.is_finite()).then(|| x.data.into())
}

/// Estimates `σ_max(A)` with `steps` power iterations on `AᵀA` from a fixed
/// start vector.
pub fn power_iteration_sigma_max(a: &DenseMatrix, steps: usize) -> f64 {
    let n = a.cols();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i + 1) as f64).sin());
    v /= v.norm();
    let mut sigma = 0.0;
    for _ in 0..steps.max(1) {
        let w = a.inner.tr_mul(&(&a.inner * &v));
        let nw = w.norm();
        if nw == 0.0 {
            return 0.0;
        }
        sigma = nw.sqrt();
        v = w / nw;
    }
    sigma
}

/// Settings for [`richardson_least_squares`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RichardsonOptions {
    /// Step size; `None` uses `1/σ_max²` from 20 power-iteration steps.
    pub relaxation: Option<f64>,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for RichardsonOptions {
    fn default() -> Self {
        RichardsonOptions {
            relaxation: None,
            max_iters: 10_000,
            tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RichardsonSolution {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// `false` when `max_iters` ran out; `x` is then the iterate with the
    /// smallest normal-equation residual seen.
    pub converged: bool,
}

/// Richardson iteration `x ← x + ω Aᵀ(y − Ax)` from `x = 0`, stopped when
/// `‖Aᵀ(y − Ax)‖ ≤ tol · ‖Aᵀy‖`.
pub fn richardson_least_squares(
    a: &DenseMatrix,
    y: &[f64],
    opts: &RichardsonOptions,
) -> Result<RichardsonSolution> {
    if a.rows() != y.len() {
        return Err(Error::dims(format!(
            "right-hand side of length {} against {} rows",
            y.len(),
            a.rows()
        )));
    }
    check_finite(y, "right-hand side")?;
    let sigma = power_iteration_sigma_max(a, 20);
    let omega = match opts.relaxation {
        Some(w) => {
            if !(w.is_finite() && w > 0.0 && w * sigma * sigma < 2.0) {
                return Err(Error::invalid(format!(
                    "relaxation {w} outside (0, 2/σ_max²) with σ_max ≈ {sigma}"
                )));
            }
            w
        }
        None if sigma > 0.0 => 1.0 / (sigma * sigma),
        None => 1.0,
    };

    let a_mat = &a.inner;
    let y_vec = DVector::from_column_slice(y);
    let target = opts.tol * a_mat.tr_mul(&y_vec).norm();
    let mut x = DVector::zeros(a.cols());
    let mut best = (f64::INFINITY, x.clone());
    for it in 0..opts.max_iters {
        let grad = a_mat.tr_mul(&(&y_vec - a_mat * &x));
        let g = grad.norm();
        if g <= target {
            return Ok(RichardsonSolution {
                x: x.data.into(),
                iterations: it,
                converged: true,
            });
        }
        if g < best.0 {
            best = (g, x.clone());
        }
        x.axpy(omega, &grad, 1.0);
    }
    let grad = a_mat.tr_mul(&(&y_vec - a_mat * &x)).norm();
    if grad <= target {
        return Ok(RichardsonSolution {
            x: x.data.into(),
            iterations: opts.max_iters,
            converged: true,
        });
    }
    if grad < best.0 {
        best = (grad, x);
    }
    Ok(RichardsonSolution {
        x: best.1.data.into(),
        iterations: opts.max_iters,
        converged: false,
    })
}

/// Which least-squares solver the recovery algorithms use on `Φ_I`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum LeastSquaresMethod {
    /// [`least_squares`]: truncated SVD with certified QR shortcut.
    #[default]
    Direct,
    /// [`richardson_least_squares`]; the best iterate is used even when the
    /// iteration did not converge.
    Richardson(RichardsonOptions),
}

impl LeastSquaresMethod {
    pub fn solve(&self, a: &DenseMatrix, y: &[f64]) -> Result<Vec<f64>> {
        match self {
            LeastSquaresMethod::Direct => least_squares(a, y),
            LeastSquaresMethod::Richardson(opts) => Ok(richardson_least_squares(a, y, opts)?.x),
        }
    }
}

pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    Ok(svd(a)?.sigma_max())
}

/// Smallest of the `min(rows, cols)` singular values.
pub fn min_singular_value(a: &DenseMatrix) -> Result<f64> {
    Ok(svd(a)?.sigma_min())
}

pub fn min_nonzero_singular_value(a: &DenseMatrix) -> Result<f64> {
    Ok(svd(a)?.sigma_min_nonzero())
}

/// Scales every column to unit `ℓ₂` norm.
pub fn normalize_columns(a: &DenseMatrix) -> Result<DenseMatrix> {
    let mut inner = a.inner.clone();
    for (j, mut col) in inner.column_iter_mut().enumerate() {
        let n = col.norm();
        if n == 0.0 {
            return Err(Error::ZeroColumn(j));
        }
        col /= n;
    }
    Ok(DenseMatrix { inner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DenseMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    /// Solves `(AᵀA) x = Aᵀy` by Gaussian elimination with partial pivoting.
    fn normal_equations_oracle(a: &DenseMatrix, y: &[f64]) -> Vec<f64> {
        let n = a.cols();
        let mut m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| dot(a.column(i), a.column(j))).collect();
                row.push(dot(a.column(i), y));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))
                .unwrap();
            m.swap(col, piv);
            for r in col + 1..n {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
        let mut x = vec![0.0; n];
        for r in (0..n).rev() {
            let s: f64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
            x[r] = (m[r][n] - s) / m[r][r];
        }
        x
    }

    #[test]
    fn least_squares_identity() {
        let a = DenseMatrix::identity(4);
        let x = least_squares(&a, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn least_squares_orthonormal_projection() {
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
        ])
        .unwrap();
        let x = least_squares(&a, &[5.0, 7.0, 0.0, 0.0]).unwrap();
        assert!((x[0] - 5.0).abs() < 1e-14 && (x[1] - 7.0).abs() < 1e-14);
    }

    #[test]
    fn least_squares_matches_normal_equations() {
        let a = random_matrix(8, 3, 11);
        let truth = [1.0, -2.0, 3.0];
        let y = a.mul_vec(&truth).unwrap();
        let oracle = normal_equations_oracle(&a, &y);
        let x = least_squares(&a, &y).unwrap();
        for i in 0..3 {
            assert!((oracle[i] - truth[i]).abs() < 1e-9);
            assert!((x[i] - truth[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn least_squares_rank_deficient_is_minimum_norm() {
        // Two identical columns: min-norm solution splits the weight evenly.
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let x = least_squares(&a, &[2.0, 0.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_wide_matrix() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0, 1.0]]).unwrap();
        let x = least_squares(&a, &[2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12 && (x[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qr_routes_agree_with_pseudo_inverse() {
        let mut s = 0.37_f64;
        let mut next = || {
            s = (s * 9301.0 + 49297.0) % 233280.0;
            s / 233280.0 - 0.5
        };
        for (m, n) in [(7, 4), (4, 7), (5, 5)] {
            let a = DenseMatrix::from_fn(m, n, |_, _| next());
            let y: Vec<f64> = (0..m).map(|_| next()).collect();
            let want = svd(&a).unwrap().pinv_apply(&y);
            let got = least_squares(&a, &y).unwrap();
            for (p, q) in want.iter().zip(&got) {
                assert!((p - q).abs() < 1e-10, "{m}x{n}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn least_squares_errors() {
        let a = DenseMatrix::identity(3);
        assert!(matches!(
            least_squares(&a, &[1.0, 2.0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            least_squares(&a, &[1.0, f64::NAN, 0.0]),
            Err(Error::NonFinite(_))
        ));
        assert!(DenseMatrix::from_column_major(2, 2, vec![1.0, f64::INFINITY, 0.0, 1.0]).is_err());
    }

    #[test]
    fn richardson_identity_one_step() {
        let a = DenseMatrix::identity(3);
        let opts = RichardsonOptions {
            relaxation: Some(1.0),
            ..Default::default()
        };
        let sol = richardson_least_squares(&a, &[1.0, -2.0, 0.5], &opts).unwrap();
        assert_eq!(sol.x, vec![1.0, -2.0, 0.5]);
        assert_eq!(sol.iterations, 1);
        assert!(sol.converged);
    }

    #[test]
    fn richardson_diagonal_contraction() {
        // diag(1, 0.5) embedded in 4x2. With ω = 1 the error in the second
        // coordinate contracts by |1 - 0.25| each step; the first is exact
        // after one step.
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 0.5],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
        ])
        .unwrap();
        let y = [2.0, 1.0, 0.0, 0.0];
        let exact = [2.0, 2.0];
        let mut prev_err = f64::INFINITY;
        for iters in 1..12 {
            let opts = RichardsonOptions {
                relaxation: Some(1.0),
                max_iters: iters,
                tol: 0.0,
            };
            let sol = richardson_least_squares(&a, &y, &opts).unwrap();
            let err = (sol.x[1] - exact[1]).abs();
            assert!((sol.x[0] - exact[0]).abs() < 1e-15);
            assert!((err - 2.0 * 0.75f64.powi(iters as i32)).abs() < 1e-12);
            assert!(err <= 0.75 * prev_err + 1e-15);
            prev_err = err;
        }
        let sol = richardson_least_squares(
            &a,
            &y,
            &RichardsonOptions {
                relaxation: Some(1.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(sol.converged);
        let direct = least_squares(&a, &y).unwrap();
        for i in 0..2 {
            assert!((sol.x[i] - direct[i]).abs() <= 1e-6 * norm2(&direct));
        }
    }

    #[test]
    fn richardson_rejects_bad_relaxation() {
        let a = DenseMatrix::identity(2);
        for w in [0.0, -1.0, 2.5, f64::NAN] {
            let opts = RichardsonOptions {
                relaxation: Some(w),
                ..Default::default()
            };
            assert!(richardson_least_squares(&a, &[1.0, 1.0], &opts).is_err());
        }
    }

    #[test]
    fn richardson_reports_non_convergence() {
        let a = random_matrix(10, 4, 3);
        let opts = RichardsonOptions {
            relaxation: None,
            max_iters: 2,
            tol: 1e-14,
        };
        let sol = richardson_least_squares(&a, &vec![1.0; 10], &opts).unwrap();
        assert!(!sol.converged);
        assert_eq!(sol.iterations, 2);
    }

    #[test]
    fn svd_diagonal_and_rank_one() {
        let f = svd(&DenseMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap()).unwrap();
        assert!((f.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((f.singular_values[1] - 1.0).abs() < 1e-14);
        assert_eq!(f.rank, 2);

        let ones = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let f = svd(&ones).unwrap();
        assert!((f.singular_values[0] - 2.0).abs() < 1e-14);
        assert!(f.singular_values[1].abs() < 1e-14);
        assert_eq!(f.rank, 1);
        assert!((f.sigma_min_nonzero() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn svd_orthogonality_and_signs() {
        let a = random_matrix(5, 3, 7);
        let f = svd(&a).unwrap();
        let utu = f.u.gram();
        let vtv = f.v.gram();
        let eye = DenseMatrix::identity(3);
        assert!(utu.max_abs_diff(&eye).unwrap() < 1e-10);
        assert!(vtv.max_abs_diff(&eye).unwrap() < 1e-10);
        assert!(f.reconstruct().max_abs_diff(&a).unwrap() < 1e-10 * a.frobenius_norm());
        for k in 0..3 {
            let first = f.u.column(k).iter().find(|x| x.abs() > 1e-12).unwrap();
            assert!(*first > 0.0);
        }
        assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn svd_wide_matrix() {
        let a = random_matrix(3, 6, 8);
        let f = svd(&a).unwrap();
        assert_eq!(f.u.rows(), 3);
        assert_eq!(f.v.rows(), 6);
        assert_eq!(f.singular_values.len(), 3);
        assert!(f.reconstruct().max_abs_diff(&a).unwrap() < 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn singular_value_wrappers() {
        let d = DenseMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((spectral_norm(&d).unwrap() - 3.0).abs() < 1e-14);
        assert!((min_singular_value(&d).unwrap() - 1.0).abs() < 1e-14);
        assert!((min_nonzero_singular_value(&d).unwrap() - 1.0).abs() < 1e-14);

        let ones = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!((spectral_norm(&ones).unwrap() - 2.0).abs() < 1e-14);
        assert!(min_singular_value(&ones).unwrap().abs() < 1e-14);
        assert!((min_nonzero_singular_value(&ones).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn spectral_norm_matches_power_iteration() {
        let a = random_matrix(6, 4, 21);
        let est = power_iteration_sigma_max(&a, 2000);
        assert!((spectral_norm(&a).unwrap() - est).abs() < 1e-6);
    }

    #[test]
    fn pseudo_inverse_matches_apply() {
        let a = random_matrix(7, 4, 5);
        let f = svd(&a).unwrap();
        let y: Vec<f64> = (0..7).map(|i| i as f64 - 3.0).collect();
        let via_matrix = f.pseudo_inverse().mul_vec(&y).unwrap();
        let via_apply = f.pinv_apply(&y);
        for (p, q) in via_matrix.iter().zip(&via_apply) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn normalize_columns_cases() {
        let a = DenseMatrix::from_rows(&[vec![3.0], vec![4.0], vec![0.0]]).unwrap();
        let n = normalize_columns(&a).unwrap();
        assert!((n.get(0, 0) - 0.6).abs() < 1e-15 && (n.get(1, 0) - 0.8).abs() < 1e-15);
        assert_eq!(n.get(2, 0), 0.0);

        let eye = DenseMatrix::identity(4);
        assert_eq!(normalize_columns(&eye).unwrap(), eye);

        let r = normalize_columns(&random_matrix(8, 5, 2)).unwrap();
        assert!(r.column_norms().iter().all(|n| (n - 1.0).abs() < 1e-12));

        let z = DenseMatrix::from_rows(&[vec![1.0, 0.0, 2.0], vec![1.0, 0.0, 2.0]]).unwrap();
        assert!(matches!(normalize_columns(&z), Err(Error::ZeroColumn(1))));
    }

    #[test]
    fn qr_shortcut_agrees_with_svd_route() {
        for seed in 0..20 {
            let a = random_matrix(30, 12, 100 + seed);
            let y: Vec<f64> = (0..30).map(|i| ((i * 7 + seed as usize) % 5) as f64).collect();
            let direct = least_squares(&a, &y).unwrap();
            let via_svd = svd(&a).unwrap().pinv_apply(&y);
            for (p, q) in direct.iter().zip(&via_svd) {
                assert!((p - q).abs() < 1e-10);
            }
        }
    }
}
