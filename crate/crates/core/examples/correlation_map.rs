//! Column correlations of a smoothed, downsampled Haar dictionary: nearly all
//! entries are close to zero, with the remainder between related scales.

use partinv::harness::{filtered_haar_matrix, matrix_image};
use partinv::sensing::correlation_map;

fn main() -> partinv::Result<()> {
    let n = 256;
    let phi = filtered_haar_matrix(n)?;
    let g = correlation_map(&phi);
    let above = g.as_slice().iter().filter(|&&v| v > 0.05).count();
    println!("Phi is {}x{}; {:.2}% of |Phi^T Phi| entries exceed 0.05", phi.rows(), phi.cols(), 100.0 * above as f64 / (n * n) as f64);
    for j in [1usize, 2, 4, 8] {
        println!("column {j}: |<phi_j, phi_2j>| = {:.3}", g.get(j, 2 * j));
    }
    let path = std::env::temp_dir().join("correlation_map.pgm");
    matrix_image(&g).write_pgm(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
