use super::{GradientField, ImageGrid};
use crate::vecops::check_len;
use crate::Result;

/// Periodic forward differences.
pub fn discrete_gradient(x: &ImageGrid) -> GradientField {
    gradient_flat(x.n(), x.values())
}

pub(crate) fn gradient_flat(n: usize, x: &[f64]) -> GradientField {
    let mut comp1 = vec![0.0; n * n];
    let mut comp2 = vec![0.0; n * n];
    for i in 0..n {
        let ip = (i + 1) % n;
        for j in 0..n {
            let jp = (j + 1) % n;
            let v = x[i * n + j];
            comp1[i * n + j] = x[ip * n + j] - v;
            comp2[i * n + j] = x[i * n + jp] - v;
        }
    }
    GradientField { n, comp1, comp2 }
}

/// Divergence of a stacked `2 n^2` field, defined by `<D x, p> = -<x, div p>`.
pub fn discrete_divergence(n: usize, p: &[f64]) -> Result<ImageGrid> {
    check_len(2 * n * n, p.len())?;
    ImageGrid::new(n, divergence_flat(n, p))
}

pub(crate) fn divergence_flat(n: usize, p: &[f64]) -> Vec<f64> {
    let (p1, p2) = p.split_at(n * n);
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        let im = (i + n - 1) % n;
        for j in 0..n {
            let jm = (j + n - 1) % n;
            let k = i * n + j;
            out[k] = p1[k] - p1[im * n + j] + p2[k] - p2[i * n + jm];
        }
    }
    out
}
