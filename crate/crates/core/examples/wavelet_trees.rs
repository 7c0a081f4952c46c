//! Tree-sparse image recovery: blur, subsample and Daubechies-5 synthesis on
//! 32x32 patches, recovered by the tree-aware PartInv variant.

use partinv::harness::{wavelet_experiment, wavelet_sensing_matrix, WaveletConfig};
use partinv::recovery::{partinv_wavelet, success, PartInvOptions};
use partinv::sensing::{RngStream, SparseSignal};

fn main() -> partinv::Result<()> {
    let (phi, partition) = wavelet_sensing_matrix(12)?;
    println!("Phi is {}x{}, {} sets", phi.rows(), phi.cols(), partition.len());

    // one instance on two trees
    let mut rng = RngStream::new(5, &[]);
    let trees = partition.tree_sets();
    let picked = rng.sample_indices(trees.len(), 2);
    let mut support: Vec<usize> = picked.iter().flat_map(|&t| partition.set(trees[t]).to_vec()).collect();
    support.sort_unstable();
    let values: Vec<f64> = support.iter().map(|_| rng.standard_normal()).collect();
    let c = SparseSignal::new(phi.cols(), support, &values)?;
    let y = phi.mul_vec(c.values())?;
    let k = c.sparsity();
    let r = partinv_wavelet(&phi, &y, k, &partition, &PartInvOptions::equal_k(k))?;
    println!("K={k}: success={} iterations={} residual={:.1e}", success(&c, &r.estimate), r.iterations, r.residual_norm);

    let cfg = WaveletConfig {
        rates: vec![8, 14],
        tree_counts: Some(vec![1, 2, 4]),
        trials: 20,
        ..WaveletConfig::default()
    };
    let grid = wavelet_experiment(&cfg)?;
    for cell in &grid.cells {
        println!("rate {:.3} trees {} -> {}/{}", cell.delta, grid.rows[cell.row_index], cell.successes, cell.trials);
    }
    Ok(())
}
