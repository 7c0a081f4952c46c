//! The correlated column-subset ensemble: a look at its Gram structure and
//! how the candidate-set size changes PartInv's success there.

use partinv::harness::{correlated_signal, Ensemble, LSensitivityConfig};
use partinv::recovery::{partinv, success, PartInvOptions};
use partinv::sensing::{correlated_block_matrix, CorrelatedBlockParams, RngStream};

fn main() -> partinv::Result<()> {
    let (n, m) = (256, 128);
    let mut rng = RngStream::new(3, &[]);
    let phi = correlated_block_matrix(m, n, &CorrelatedBlockParams::default(), &mut rng)?;
    let g = phi.gram();
    let (mut inside, mut across) = (0.0, 0.0);
    for i in 0..16 {
        inside += g.get(i, (i + 1) % 16).abs();
        across += g.get(i, i + 16).abs();
    }
    println!("mean |<phi_i, phi_j>| within a subset {:.3}, across subsets {:.3}", inside / 16.0, across / 16.0);

    let k = 24;
    let c = correlated_signal(n, k, &mut rng)?;
    let y = phi.mul_vec(c.values())?;
    for opts in [PartInvOptions::equal_k(k), PartInvOptions::max_k_08m(k, m)] {
        let r = partinv(&phi, &y, k, &opts)?;
        println!("L={:3}: success={} iterations={}", opts.l, success(&c, &r.estimate), r.iterations);
    }

    let mut sweep = LSensitivityConfig::new(Ensemble::CorrelatedBlock, m, k);
    sweep.trials = 10;
    sweep.l_values = Some(vec![k, m / 2, m * 4 / 5]);
    for cell in partinv::harness::l_sensitivity(&sweep)?.cells {
        println!("L={:3}: {}/{} trials recovered", cell.l.unwrap_or(0), cell.successes, cell.trials);
    }
    Ok(())
}
