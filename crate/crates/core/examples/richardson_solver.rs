//! PartInv with the inner least-squares step done by Richardson iteration
//! instead of a direct factorization.

use partinv::linalg::{LeastSquaresMethod, RichardsonOptions};
use partinv::recovery::{partinv, PartInvOptions};
use partinv::sensing::{gaussian_matrix, random_sparse_signal, RngStream};

fn main() -> partinv::Result<()> {
    let (n, m, k) = (200, 100, 10);
    let mut rng = RngStream::new(7, &[]);
    let phi = gaussian_matrix(m, n, &mut rng)?;
    let c = random_sparse_signal(n, k, &mut rng)?;
    let y = phi.mul_vec(c.values())?;

    let direct = partinv(&phi, &y, k, &PartInvOptions::equal_k(k))?;
    let iterative = PartInvOptions::equal_k(k).solver(LeastSquaresMethod::Richardson(RichardsonOptions {
        tol: 1e-13,
        ..Default::default()
    }));
    let rich = partinv(&phi, &y, k, &iterative)?;

    let gap = direct.estimate.iter().zip(&rich.estimate).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("same support: {}", direct.support == rich.support);
    println!("max coefficient difference: {gap:.2e}");
    println!("residuals: direct {:.2e}, richardson {:.2e}", direct.residual_norm, rich.residual_norm);
    Ok(())
}
