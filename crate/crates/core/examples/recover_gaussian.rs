//! Recover one K-sparse signal from Gaussian measurements with PartInv and
//! CoSaMP and compare.

use partinv::recovery::{cosamp, mean_squared_error, partinv, success, PartInvOptions};
use partinv::sensing::{gaussian_matrix, random_sparse_signal, RngStream};

fn main() -> partinv::Result<()> {
    let (n, m, k) = (256, 128, 20);
    let mut rng = RngStream::new(42, &[]);
    let phi = gaussian_matrix(m, n, &mut rng)?;
    let c = random_sparse_signal(n, k, &mut rng)?;
    let y = phi.mul_vec(c.values())?;

    let pi = partinv(&phi, &y, k, &PartInvOptions::equal_k(k))?;
    let cs = cosamp(&phi, &y, k, 30)?;
    for (name, r) in [("partinv", &pi), ("cosamp", &cs)] {
        println!(
            "{name:8} iterations={:2} residual={:.2e} mse={:.2e} success={} ({})",
            r.iterations,
            r.residual_norm,
            mean_squared_error(&c, &r.estimate),
            success(&c, &r.estimate),
            r.termination.as_str()
        );
    }
    Ok(())
}
