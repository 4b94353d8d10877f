//! Plain-text matrix files.
//!
//! ```text
//! rows cols
//! v11 v12 ... v1c
//! ...
//! vr1 vr2 ... vrc
//! ```
//!
//! Values are whitespace separated decimals. Images and PSFs are square, so
//! their header reads `n n`. Lines starting with `#` are comments and are
//! skipped when reading. Values are written with Rust's shortest round-trip
//! float formatting, so a write/read cycle is exact.

use std::fmt::Write as _;
use std::path::Path;

use super::{ImageGrid, PsfKernel};
use crate::{Error, Result};

/// Dense row-major matrix as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

pub fn format_matrix(rows: usize, cols: usize, values: &[f64]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{rows} {cols}");
    for r in 0..rows {
        let line: Vec<String> = values[r * cols..(r + 1) * cols].iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn parse_matrix(text: &str, origin: &str) -> Result<Matrix> {
    let err = |msg: String| Error::Parse { path: origin.to_string(), msg };
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| err(format!("bad header `{header}`: {e}"))))
        .collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(err(format!("header must be `rows cols`, got `{header}`")));
    }
    let (rows, cols) = (dims[0], dims[1]);
    let mut values = Vec::with_capacity(rows * cols);
    for (r, line) in lines.enumerate() {
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| err(format!("row {}: `{t}`: {e}", r + 1))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(err(format!("row {} has {} values, expected {cols}", r + 1, row.len())));
        }
        values.extend(row);
    }
    if values.len() != rows * cols {
        return Err(err(format!("expected {rows} rows, got {}", values.len() / cols.max(1))));
    }
    Ok(Matrix { rows, cols, values })
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text, &path.display().to_string())
}

pub fn write_matrix(path: &Path, rows: usize, cols: usize, values: &[f64]) -> Result<()> {
    std::fs::write(path, format_matrix(rows, cols, values))?;
    Ok(())
}

pub fn read_image(path: &Path) -> Result<ImageGrid> {
    let m = read_matrix(path)?;
    if m.rows != m.cols {
        return Err(Error::Parse {
            path: path.display().to_string(),
            msg: format!("image must be square, got {}x{}", m.rows, m.cols),
        });
    }
    ImageGrid::new(m.rows, m.values)
}

pub fn write_image(path: &Path, img: &ImageGrid) -> Result<()> {
    write_matrix(path, img.n(), img.n(), img.values())
}

/// Reads a square PSF; the kernel origin is taken at `(n / 2, n / 2)`.
pub fn read_psf(path: &Path) -> Result<PsfKernel> {
    let img = read_image(path)?;
    let n = img.n();
    PsfKernel::new(n, img.into_values(), (n / 2, n / 2))
}
