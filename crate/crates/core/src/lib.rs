//! Partial Inversion (PartInv) greedy sparse recovery.
//!
//! PartInv recovers a `K`-sparse coefficient vector `c` from measurements
//! `y = Φc` by repeatedly least-squares inverting `Φ` on a candidate set of
//! `L` columns and scoring the remaining columns against the residual. It is
//! aimed at sensing matrices with subsets of highly correlated columns, such
//! as the filtered-and-downsampled wavelet dictionaries that arise in image
//! super-resolution.
//!
//! The crate is organised as:
//!
//! - [`linalg`]: dense matrices, SVD, least squares (direct and Richardson).
//! - [`sensing`]: matrix and signal ensembles, acquisition operators, RNG streams.
//! - [`wavelet`]: Haar and 2D Daubechies bases, the wavelet-tree partition.
//! - [`recovery`]: PartInv, tree-structured PartInv and the CoSaMP baseline.
//! - [`theory`]: numerical checks of the exact-recovery conditions.
//! - [`harness`]: phase-diagram sweeps, CSV/PGM output and the CLI.
//!
//! ```
//! use partinv::linalg::DenseMatrix;
//! use partinv::recovery::{partinv, PartInvOptions};
//!
//! let phi = DenseMatrix::identity(8);
//! let c = [0.0, 3.0, 0.0, 0.0, -1.5, 0.0, 0.0, 0.0];
//! let y = phi.mul_vec(&c).unwrap();
//! let out = partinv(&phi, &y, 2, &PartInvOptions::equal_k(2)).unwrap();
//! assert_eq!(out.support, vec![1, 4]);
//! ```

pub mod error;
pub mod harness;
pub mod linalg;
pub mod recovery;
pub mod sensing;
pub mod theory;
pub mod wavelet;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use recovery::{RecoveryResult, Termination};
pub use sensing::{RngStream, SparseSignal};
