//! A reduced Gaussian phase diagram for PartInv and CoSaMP, printed as text
//! and written as CSV plus PGM heatmaps to the temp directory.

use partinv::harness::{heatmap, write_csv, Algorithm, Ensemble, SweepConfig, SweepGrid};

fn show(name: &str, grid: &SweepGrid) {
    println!("{name}: rows rho (top = largest), columns delta");
    for ri in (0..grid.rows.len()).rev() {
        let line: Vec<String> = (0..grid.deltas.len()).map(|di| format!("{:4.2}", grid.proportion(di, ri))).collect();
        println!("  rho={:.1} {}", grid.rows[ri], line.join(" "));
    }
}

fn main() -> partinv::Result<()> {
    let mut cfg = SweepConfig::new(Ensemble::Gaussian);
    cfg.n = 128;
    cfg.deltas = vec![0.2, 0.4, 0.6, 0.8];
    cfg.rhos = vec![0.1, 0.3, 0.5, 0.7];
    cfg.trials = 10;

    let dir = std::env::temp_dir();
    for algo in [Algorithm::PartInv, Algorithm::CoSaMP] {
        cfg.algorithm = algo;
        let grid = partinv::harness::phase_diagram(&cfg)?;
        show(&algo.to_string(), &grid);
        let csv = dir.join(format!("phase_{algo}.csv"));
        write_csv(&grid, &csv)?;
        heatmap(&grid)?.write_pgm(csv.with_extension("pgm"))?;
        println!("  wrote {}", csv.display());
    }
    Ok(())
}
