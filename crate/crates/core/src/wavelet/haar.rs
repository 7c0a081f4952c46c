use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

fn check_power_of_two(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::invalid(format!("length {n} is not a power of two")));
    }
    Ok(())
}

/// Scale index of Haar column `j >= 1`: column `j` lives at level
/// `⌊log₂ j⌋`, where level 0 is the coarsest wavelet.
pub fn haar_level(j: usize) -> usize {
    debug_assert!(j >= 1);
    (usize::BITS - 1 - j.leading_zeros()) as usize
}

/// Samples covered by Haar column `j` of a length-`n` basis.
pub fn haar_support(n: usize, j: usize) -> Range<usize> {
    if j == 0 {
        return 0..n;
    }
    let level = haar_level(j);
    let width = n >> level;
    let pos = j - (1 << level);
    pos * width..(pos + 1) * width
}

/// The two next-finer wavelets nested inside column `j >= 1`, if any.
pub fn haar_children(n: usize, j: usize) -> Option<[usize; 2]> {
    (j >= 1 && 2 * j + 1 < n).then_some([2 * j, 2 * j + 1])
}

/// Orthonormal Haar synthesis matrix.
///
/// Column 0 is the constant vector; column `j >= 1` at level `ℓ = ⌊log₂ j⌋`
/// is `+1/√w` on the first half and `-1/√w` on the second half of its
/// support of width `w = n / 2^ℓ`. Column `j` is [`haar_inverse`] of `e_j`.
pub fn haar_basis(n: usize) -> Result<DenseMatrix> {
    check_power_of_two(n)?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        let supp = haar_support(n, j);
        if !supp.contains(&i) {
            return 0.0;
        }
        let w = supp.len() as f64;
        if j == 0 || i < supp.start + supp.len() / 2 {
            1.0 / w.sqrt()
        } else {
            -1.0 / w.sqrt()
        }
    }))
}

/// Full-depth orthonormal Haar analysis, coefficients ordered as the
/// columns of [`haar_basis`].
pub fn haar_forward(x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    check_power_of_two(n)?;
    let mut out = vec![0.0; n];
    let mut approx = x.to_vec();
    let mut len = n;
    while len > 1 {
        let half = len / 2;
        let mut next = vec![0.0; half];
        for i in 0..half {
            next[i] = (approx[2 * i] + approx[2 * i + 1]) * FRAC_1_SQRT_2;
            out[half + i] = (approx[2 * i] - approx[2 * i + 1]) * FRAC_1_SQRT_2;
        }
        approx = next;
        len = half;
    }
    out[0] = approx[0];
    Ok(out)
}

pub fn haar_inverse(coeffs: &[f64]) -> Result<Vec<f64>> {
    let n = coeffs.len();
    check_power_of_two(n)?;
    let mut approx = vec![coeffs[0]];
    let mut half = 1;
    while half < n {
        let mut next = vec![0.0; 2 * half];
        for i in 0..half {
            let d = coeffs[half + i];
            next[2 * i] = (approx[i] + d) * FRAC_1_SQRT_2;
            next[2 * i + 1] = (approx[i] - d) * FRAC_1_SQRT_2;
        }
        approx = next;
        half *= 2;
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_basis() {
        let h = haar_basis(2).unwrap();
        let s = FRAC_1_SQRT_2;
        assert!((h.get(0, 0) - s).abs() < 1e-15 && (h.get(1, 0) - s).abs() < 1e-15);
        assert!((h.get(0, 1) - s).abs() < 1e-15 && (h.get(1, 1) + s).abs() < 1e-15);
    }

    #[test]
    fn basis_256_orthogonal() {
        let h = haar_basis(256).unwrap();
        let err = h.gram().max_abs_diff(&DenseMatrix::identity(256)).unwrap();
        assert!(err <= 1e-12, "orthogonality residual {err}");
    }

    #[test]
    fn fast_inverse_matches_columns() {
        let n = 64;
        let h = haar_basis(n).unwrap();
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = haar_inverse(&e).unwrap();
            for i in 0..n {
                assert!((col[i] - h.get(i, j)).abs() < 1e-14);
            }
            let back = haar_forward(&col).unwrap();
            for i in 0..n {
                assert!((back[i] - e[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(haar_basis(12).is_err());
        assert!(haar_forward(&[1.0; 6]).is_err());
    }

    #[test]
    fn support_and_children() {
        assert_eq!(haar_support(16, 0), 0..16);
        assert_eq!(haar_support(16, 1), 0..16);
        assert_eq!(haar_support(16, 3), 8..16);
        assert_eq!(haar_support(16, 15), 14..16);
        assert_eq!(haar_children(16, 3), Some([6, 7]));
        assert_eq!(haar_children(16, 8), None);
        for j in 1..8 {
            let [a, b] = haar_children(16, j).unwrap();
            let p = haar_support(16, j);
            let (ca, cb) = (haar_support(16, a), haar_support(16, b));
            assert_eq!(ca.start, p.start);
            assert_eq!(cb.end, p.end);
            assert_eq!(ca.end, cb.start);
        }
    }
}
