use std::fmt::Write as _;
use std::path::Path;

use super::sweep::{CellStatus, SweepGrid};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub const CSV_HEADER: &str = "delta,rho,M,K,L,trials,successes,mean_iters,mean_residual,status";

/// One row per cell. Skipped cells have `trials = 0`, empty means and
/// status `skipped`. CoSaMP rows leave `L` empty. Floats use Rust's
/// shortest round-trip formatting.
pub fn grid_to_csv(grid: &SweepGrid) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in &grid.cells {
        let l = c.l.map(|l| l.to_string()).unwrap_or_default();
        let _ = match &c.status {
            CellStatus::Ok => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},ok",
                c.delta, c.rho, c.m, c.k, l, c.trials, c.successes, c.mean_iterations, c.mean_residual
            ),
            CellStatus::Skipped(_) => writeln!(out, "{},{},{},{},{},0,0,,,skipped", c.delta, c.rho, c.m, c.k, l),
        };
    }
    out
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn write_csv(grid: &SweepGrid, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), grid_to_csv(grid).as_bytes())
}

/// `key=value` sidecar describing how a grid was produced, including the
/// reason for every skipped cell.
pub fn grid_metadata(grid: &SweepGrid) -> String {
    let mut out = String::new();
    for (k, v) in &grid.metadata {
        let _ = writeln!(out, "{k}={v}");
    }
    let _ = writeln!(out, "row-axis={}", grid.row_axis);
    for c in &grid.cells {
        if let CellStatus::Skipped(reason) = &c.status {
            let l = c.l.map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "skipped={},{},{},{},{}: {reason}", c.delta, c.rho, c.m, c.k, l);
        }
    }
    out
}

pub fn write_metadata(grid: &SweepGrid, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), grid_metadata(grid).as_bytes())
}

/// 8-bit grayscale image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Binary PGM (`P5`) encoding.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn write_pgm(&self, path: impl AsRef<Path>) -> Result<()> {
        write_bytes(path.as_ref(), &self.to_pgm())
    }
}

/// One pixel per grid point, `round(255·p)` where `p` is the best success
/// proportion there (0 when skipped). `δ` increases to the right and the row
/// parameter increases upward.
pub fn heatmap(grid: &SweepGrid) -> Result<GrayImage> {
    let (w, h) = (grid.deltas.len(), grid.rows.len());
    if w == 0 || h == 0 {
        return Err(Error::invalid("cannot render an empty grid"));
    }
    let mut pixels = vec![0u8; w * h];
    for di in 0..w {
        for ri in 0..h {
            let p = grid.proportion(di, ri);
            pixels[(h - 1 - ri) * w + di] = (255.0 * p).round() as u8;
        }
    }
    Ok(GrayImage {
        width: w,
        height: h,
        pixels,
    })
}

pub fn render_heatmap(grid: &SweepGrid, path: impl AsRef<Path>) -> Result<()> {
    heatmap(grid)?.write_pgm(path)
}

/// `|ΦᵀΦ|`-style map scaled so the largest entry is white.
pub fn matrix_image(a: &DenseMatrix) -> GrayImage {
    let max = a.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if max > 0.0 { 255.0 / max } else { 0.0 };
    let (h, w) = (a.rows(), a.cols());
    let pixels = (0..h * w)
        .map(|p| (a.get(p / w, p % w).abs() * scale).round() as u8)
        .collect();
    GrayImage {
        width: w,
        height: h,
        pixels,
    }
}

/// Comma-separated rows of a matrix.
pub fn matrix_to_csv(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let row: Vec<String> = (0..a.cols()).map(|j| a.get(i, j).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    write_bytes(path.as_ref(), text.as_bytes())
}

/// Parses a binary PGM with maximum value 255. Comments are not supported.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let bad = |m: &str| Error::Parse {
        context: "pgm".into(),
        message: m.into(),
    };
    let mut pos = 0;
    let mut tokens = Vec::new();
    while tokens.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        tokens.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("non-ascii header"))?);
    }
    if tokens[0] != "P5" {
        return Err(bad("not a binary graymap (P5)"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad header number"));
    let (width, height, maxval) = (num(tokens[1])?, num(tokens[2])?, num(tokens[3])?);
    if maxval != 255 {
        return Err(bad("only maxval 255 is supported"));
    }
    pos += 1;
    let pixels = bytes.get(pos..).unwrap_or(&[]).to_vec();
    if pixels.len() != width * height {
        return Err(bad("pixel data length does not match header"));
    }
    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    parse_pgm(&std::fs::read(path).map_err(|e| Error::io(path, e))?)
}

#[cfg(test)]
mod tests {
    use super::super::sweep::Cell;
    use super::*;

    fn grid(props: &[[usize; 3]; 2]) -> SweepGrid {
        let mut cells = Vec::new();
        for (ri, row) in props.iter().enumerate() {
            for (di, &s) in row.iter().enumerate() {
                cells.push(Cell {
                    delta_index: di,
                    row_index: ri,
                    delta: 0.1 * (di + 1) as f64,
                    rho: 0.5 * (ri + 1) as f64,
                    m: 10,
                    k: 2,
                    l: Some(2),
                    trials: 4,
                    successes: s,
                    mean_iterations: 1.5,
                    mean_residual: 0.25,
                    status: CellStatus::Ok,
                    stream: [0, di as u64, ri as u64],
                });
            }
        }
        SweepGrid {
            deltas: vec![0.1, 0.2, 0.3],
            rows: vec![0.5, 1.0],
            row_axis: "rho",
            cells,
            metadata: vec![],
        }
    }

    #[test]
    fn heatmap_orientation_and_round_trip() {
        let g = grid(&[[4, 3, 0], [1, 2, 4]]);
        let img = heatmap(&g).unwrap();
        let back = parse_pgm(&img.to_pgm()).unwrap();
        assert_eq!(back, img);
        // bottom row is the first rho value
        assert_eq!(back.get(0, 1), 255);
        assert_eq!(back.get(1, 1), 191);
        assert_eq!(back.get(2, 1), 0);
        assert_eq!(back.get(0, 0), 64);
        assert_eq!(back.get(2, 0), 255);
    }

    #[test]
    fn pgm_header() {
        let g = grid(&[[4, 4, 4], [4, 4, 4]]);
        let bytes = heatmap(&g).unwrap().to_pgm();
        assert!(bytes.starts_with(b"P5\n3 2\n255\n"));
        assert!(bytes[bytes.len() - 6..].iter().all(|&b| b == 255));
    }

    #[test]
    fn csv_rows() {
        let mut g = grid(&[[4, 3, 0], [1, 2, 4]]);
        g.cells[1].status = CellStatus::Skipped("K >= M".into());
        let csv = grid_to_csv(&g);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "0.1,0.5,10,2,2,4,4,1.5,0.25,ok");
        assert_eq!(lines[2], "0.2,0.5,10,2,2,0,0,,,skipped");
        assert!(grid_metadata(&g).contains("skipped=0.2,0.5,10,2,2: K >= M"));
    }

    #[test]
    fn bad_pgm() {
        assert!(parse_pgm(b"P2\n1 1\n255\n\x00").is_err());
        assert!(parse_pgm(b"P5\n2 2\n255\n\x00").is_err());
    }
}
