//! Experiment driver: phase-diagram sweeps, `L`-sensitivity curves, best-`L`
//! search, wavelet-tree experiments, CSV/PGM output and the CLI.
//!
//! Sweeps run their trials on the current rayon thread pool. Each trial
//! draws from its own RNG stream keyed by the seed and the trial's grid
//! position, so output is identical for any thread count.

pub mod cli;
mod config;
mod output;
mod sweep;

pub use config::{default_grid, sixteenths, Algorithm, Ensemble, LPolicy, Settings, SweepConfig, WAVELET_LEVELS, WAVELET_SIDE};
pub use output::{
    grid_metadata, grid_to_csv, heatmap, matrix_image, matrix_to_csv, parse_pgm, read_pgm, render_heatmap, write_csv,
    write_metadata, GrayImage, CSV_HEADER,
};
pub use sweep::{
    best_l_search, correlated_signal, l_sensitivity, phase_diagram, trial_streams, wavelet_experiment,
    wavelet_sensing_matrix, Cell, CellStatus, LSensitivityConfig, SweepGrid, WaveletConfig, ROLE_MATRIX, ROLE_SIGNAL,
    TREE_SIZE,
};

use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::sensing::{filter_downsample_1d, SMOOTHING_KERNEL_5};
use crate::wavelet::haar_basis;

/// `Φ = SHΨ` for 1D signals of length `n`: the 5-tap smoothing kernel
/// shifted by two per row (`n/2` rows) applied to the Haar basis.
pub fn filtered_haar_matrix(n: usize) -> Result<DenseMatrix> {
    filter_downsample_1d(&SMOOTHING_KERNEL_5, n, 2)?.matmul(&haar_basis(n)?)
}
