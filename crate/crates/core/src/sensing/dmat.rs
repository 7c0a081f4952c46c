//! Portable text matrix format (`.dmat`).
//!
//! ```text
//! rows cols
//! a00 a01 ... a0(cols-1)
//! ...
//! ```
//!
//! One matrix row per line, entries separated by single spaces, written with
//! the shortest decimal representation that parses back to the same `f64`.
//! Readers accept any ASCII whitespace between tokens. Vectors are stored as
//! single-column matrices (`n 1`).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub fn format_dmat(a: &DenseMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:?}", a.get(i, j));
        }
        out.push('\n');
    }
    out
}

pub fn parse_dmat(text: &str) -> Result<DenseMatrix> {
    let perr = |message: String| Error::Parse {
        context: "dmat".into(),
        message,
    };
    let mut tokens = text.split_ascii_whitespace();
    let mut dim = |name: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| perr(format!("missing {name} in header")))?
            .parse::<usize>()
            .map_err(|e| perr(format!("bad {name} in header: {e}")))
    };
    let rows = dim("rows")?;
    let cols = dim("cols")?;
    let data = tokens
        .map(|t| t.parse::<f64>().map_err(|e| perr(format!("bad entry {t:?}: {e}"))))
        .collect::<Result<Vec<f64>>>()?;
    if data.len() != rows * cols {
        return Err(perr(format!(
            "header says {rows}x{cols} = {} entries, found {}",
            rows * cols,
            data.len()
        )));
    }
    DenseMatrix::from_row_major(rows, cols, data)
}

pub fn write_dmat(path: impl AsRef<Path>, a: &DenseMatrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_dmat(a)).map_err(|e| Error::io(path, e))
}

pub fn read_dmat(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dmat(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            context: path.display().to_string(),
            message,
        },
        other => other,
    })
}

/// Writes `v` as an `n × 1` matrix.
pub fn write_vector(path: impl AsRef<Path>, v: &[f64]) -> Result<()> {
    let a = DenseMatrix::from_column_major(v.len(), 1, v.to_vec())?;
    write_dmat(path, &a)
}

/// Reads a `.dmat` file holding a single row or a single column.
pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let a = read_dmat(path)?;
    if a.cols() != 1 && a.rows() != 1 {
        return Err(Error::Parse {
            context: path.display().to_string(),
            message: format!("expected a vector, found a {}x{} matrix", a.rows(), a.cols()),
        });
    }
    Ok(a.as_slice().to_vec())
}
