//! Searches for the candidate-set size with the highest success rate at a
//! few (delta, rho) points.

use partinv::harness::{best_l_search, Ensemble, SweepConfig};

fn main() -> partinv::Result<()> {
    let mut cfg = SweepConfig::new(Ensemble::Gaussian);
    cfg.deltas = vec![0.1, 0.3];
    cfg.rhos = vec![0.3, 0.5];
    cfg.trials = 20;
    let grid = best_l_search(&cfg)?;
    for cell in &grid.cells {
        println!(
            "delta={:.1} rho={:.1} M={:3} K={:3} best L={:3} ({}/{} recovered)",
            cell.delta,
            grid.rows[cell.row_index],
            cell.m,
            cell.k,
            cell.l.unwrap_or(0),
            cell.successes,
            cell.trials
        );
    }
    Ok(())
}
