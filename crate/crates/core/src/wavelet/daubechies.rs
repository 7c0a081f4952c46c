use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Orthogonal two-channel filter bank given by its lowpass taps; the
/// highpass is the alternating flip `g[n] = (-1)ⁿ h[L-1-n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalFilter {
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
}

impl OrthogonalFilter {
    pub fn new(lowpass: Vec<f64>) -> Result<Self> {
        if lowpass.is_empty() || lowpass.len() % 2 != 0 {
            return Err(Error::invalid("orthogonal filters have even length"));
        }
        let len = lowpass.len();
        let highpass = (0..len)
            .map(|n| {
                let v = lowpass[len - 1 - n];
                if n % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        Ok(OrthogonalFilter { lowpass, highpass })
    }

    pub fn haar() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![s, s]).expect("valid filter")
    }

    /// Daubechies wavelet with 5 vanishing moments (10 taps).
    pub fn daubechies5() -> Self {
        Self::new(vec![
            0.160_102_397_974_192_9,
            0.603_829_269_797_189_6,
            0.724_308_528_437_772_9,
            0.138_428_145_901_320_7,
            -0.242_294_887_066_382,
            -0.032_244_869_584_638_375,
            0.077_571_493_840_045_72,
            -0.006_241_490_212_798_3,
            -0.012_580_751_999_082,
            0.003_335_725_285_473_771,
        ])
        .expect("valid filter")
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    /// One periodic analysis step: `a[k] = Σ h[t]·x[2k+t]`,
    /// `d[k] = Σ g[t]·x[2k+t]`, indices mod `x.len()`. Writes `a` then `d`.
    fn analyze(&self, x: &[f64], out: &mut [f64]) {
        let n = x.len();
        let half = n / 2;
        for k in 0..half {
            let (mut a, mut d) = (0.0, 0.0);
            for (t, (&h, &g)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                let v = x[(2 * k + t) % n];
                a += h * v;
                d += g * v;
            }
            out[k] = a;
            out[half + k] = d;
        }
    }

    /// Adjoint of [`Self::analyze`].
    fn synthesize(&self, coeffs: &[f64], out: &mut [f64]) {
        let n = coeffs.len();
        let half = n / 2;
        out.iter_mut().for_each(|v| *v = 0.0);
        for k in 0..half {
            let (a, d) = (coeffs[k], coeffs[half + k]);
            for (t, (&h, &g)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                out[(2 * k + t) % n] += h * a + g * d;
            }
        }
    }
}

/// Separable periodic 2D DWT on `side × side` row-major images.
#[derive(Clone, Debug)]
pub struct Dwt2d {
    filter: OrthogonalFilter,
    side: usize,
    levels: usize,
}

impl Dwt2d {
    pub fn new(filter: OrthogonalFilter, side: usize, levels: usize) -> Result<Self> {
        if levels == 0 || side == 0 || side % (1 << levels) != 0 {
            return Err(Error::invalid(format!(
                "side {side} must be a positive multiple of 2^{levels}"
            )));
        }
        Ok(Dwt2d {
            filter,
            side,
            levels,
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Image to Mallat-layout coefficients.
    pub fn forward(&self, image: &[f64]) -> Result<Vec<f64>> {
        let side = self.side;
        if image.len() != side * side {
            return Err(Error::dims(format!(
                "image has {} pixels, expected {}",
                image.len(),
                side * side
            )));
        }
        let mut c = image.to_vec();
        let mut line = vec![0.0; side];
        let mut out = vec![0.0; side];
        let mut size = side;
        for _ in 0..self.levels {
            for r in 0..size {
                line[..size].copy_from_slice(&c[r * side..r * side + size]);
                self.filter.analyze(&line[..size], &mut out[..size]);
                c[r * side..r * side + size].copy_from_slice(&out[..size]);
            }
            for col in 0..size {
                for r in 0..size {
                    line[r] = c[r * side + col];
                }
                self.filter.analyze(&line[..size], &mut out[..size]);
                for r in 0..size {
                    c[r * side + col] = out[r];
                }
            }
            size /= 2;
        }
        Ok(c)
    }

    /// Mallat-layout coefficients to image.
    pub fn inverse(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        let side = self.side;
        if coeffs.len() != side * side {
            return Err(Error::dims(format!(
                "coefficient array has {} entries, expected {}",
                coeffs.len(),
                side * side
            )));
        }
        let mut c = coeffs.to_vec();
        let mut line = vec![0.0; side];
        let mut out = vec![0.0; side];
        let mut size = side >> self.levels;
        for _ in 0..self.levels {
            size *= 2;
            for col in 0..size {
                for r in 0..size {
                    line[r] = c[r * side + col];
                }
                self.filter.synthesize(&line[..size], &mut out[..size]);
                for r in 0..size {
                    c[r * side + col] = out[r];
                }
            }
            for r in 0..size {
                line[..size].copy_from_slice(&c[r * side..r * side + size]);
                self.filter.synthesize(&line[..size], &mut out[..size]);
                c[r * side..r * side + size].copy_from_slice(&out[..size]);
            }
        }
        Ok(c)
    }

    /// Synthesis matrix: column `j` is the inverse transform of `e_j`.
    pub fn synthesis_matrix(&self) -> Result<DenseMatrix> {
        let n = self.side * self.side;
        let mut data = Vec::with_capacity(n * n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            data.extend(self.inverse(&e)?);
            e[j] = 0.0;
        }
        DenseMatrix::from_column_major(n, n, data)
    }
}

/// `side² × side²` orthogonal synthesis matrix of the periodic 2D
/// Daubechies-5 transform with `levels` decompositions.
pub fn daubechies5_basis_2d(side: usize, levels: usize) -> Result<DenseMatrix> {
    Dwt2d::new(OrthogonalFilter::daubechies5(), side, levels)?.synthesis_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db5_filter_conditions() {
        let f = OrthogonalFilter::daubechies5();
        let h = f.lowpass();
        let sum: f64 = h.iter().sum();
        assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-12);
        // Double-shift orthonormality.
        for shift in 0..5 {
            let s: f64 = (0..10 - 2 * shift).map(|n| h[n] * h[n + 2 * shift]).sum();
            let expect = if shift == 0 { 1.0 } else { 0.0 };
            assert!((s - expect).abs() < 1e-12, "shift {shift}: {s}");
        }
        // Five vanishing moments of the highpass.
        let g = f.highpass();
        for p in 0..5 {
            let m: f64 = g.iter().enumerate().map(|(n, v)| v * (n as f64).powi(p)).sum();
            assert!(m.abs() < 1e-8 * 10f64.powi(p), "moment {p}: {m}");
        }
    }

    #[test]
    fn small_basis_orthogonal() {
        for (side, levels) in [(8, 3), (16, 2), (8, 1)] {
            let psi = daubechies5_basis_2d(side, levels).unwrap();
            let n = side * side;
            let err = psi.gram().max_abs_diff(&DenseMatrix::identity(n)).unwrap();
            assert!(err < 1e-10, "{side}/{levels}: {err}");
        }
    }

    #[test]
    fn forward_recovers_unit_vectors() {
        let dwt = Dwt2d::new(OrthogonalFilter::daubechies5(), 16, 4).unwrap();
        let psi = dwt.synthesis_matrix().unwrap();
        for j in [0, 1, 5, 17, 100, 255] {
            let coeffs = dwt.forward(psi.column(j)).unwrap();
            for (i, c) in coeffs.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((c - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn haar_filter_two_d_matches_block_average() {
        let dwt = Dwt2d::new(OrthogonalFilter::haar(), 4, 2).unwrap();
        let coeffs = dwt.forward(&[1.0; 16]).unwrap();
        // A constant image has only the DC coefficient: sum / side.
        assert!((coeffs[0] - 4.0).abs() < 1e-14);
        assert!(coeffs[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(Dwt2d::new(OrthogonalFilter::daubechies5(), 24, 4).is_err());
        assert!(OrthogonalFilter::new(vec![1.0, 2.0, 3.0]).is_err());
        let dwt = Dwt2d::new(OrthogonalFilter::haar(), 4, 1).unwrap();
        assert!(dwt.forward(&[0.0; 15]).is_err());
    }
}
