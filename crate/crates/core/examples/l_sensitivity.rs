//! Success rate as the candidate-set size L grows, at fixed (M, K).

use partinv::harness::{l_sensitivity, Ensemble, LSensitivityConfig};

fn main() -> partinv::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, k) = match args[..] {
        [m, k, ..] => (m, k),
        _ => (96, 40),
    };
    let mut cfg = LSensitivityConfig::new(Ensemble::Gaussian, m, k);
    cfg.n = 128;
    cfg.trials = 10;
    let grid = l_sensitivity(&cfg)?;
    println!("gaussian N={} M={m} K={k}", cfg.n);
    for cell in &grid.cells {
        let p = cell.proportion().unwrap_or(0.0);
        println!("L={:3} {:4.2} {}", cell.l.unwrap_or(0), p, "#".repeat((p * 40.0).round() as usize));
    }
    Ok(())
}
