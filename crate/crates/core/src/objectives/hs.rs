use super::{Objective, SplitGradient};
use crate::image_ops::GradientField;
use crate::vecops::check_len;
use crate::{Error, Result};

/// Hypersurface potential `sum_ij sqrt(|(D x)_ij|^2 + delta^2)`, a smoothed
/// total variation over periodic forward differences.
///
/// The gradient is assembled from the `U`/`V` splitting, so `grad = V - U`
/// holds exactly. Neighbors at `i-1`, `j-1` wrap around like the differences.
#[derive(Debug, Clone)]
pub struct Hypersurface {
    n: usize,
    delta: f64,
}

impl Hypersurface {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!("HS delta must be positive, got {delta}")));
        }
        Ok(Self { n, delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Reciprocal local magnitudes `1 / sqrt(|Dx|^2 + delta^2)` and the field.
    fn weights(&self, x: &[f64]) -> (Vec<f64>, GradientField) {
        let field = crate::image_ops::difference::gradient_flat(self.n, x);
        let d2 = self.delta * self.delta;
        let w = field
            .comp1
            .iter()
            .zip(&field.comp2)
            .map(|(a, b)| 1.0 / (a * a + b * b + d2).sqrt())
            .collect();
        (w, field)
    }
}

impl Objective for Hypersurface {
    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_len(self.dim(), x.len())?;
        let (w, _) = self.weights(x);
        Ok(w.iter().map(|w| 1.0 / w).sum())
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let value = self.value(x)?;
        Ok((value, self.split_gradient(x)?.gradient()))
    }

    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        check_len(self.dim(), x.len())?;
        let n = self.n;
        let (w, _) = self.weights(x);
        let mut u = vec![0.0; n * n];
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
            for j in 0..n {
                let (jp, jm) = ((j + 1) % n, (j + n - 1) % n);
                let k = i * n + j;
                let w_here = w[k];
                let w_left = w[i * n + jm];
                let w_up = w[im * n + j];
                u[k] = (x[ip * n + j] + x[i * n + jp]) * w_here
                    + x[i * n + jm] * w_left
                    + x[im * n + j] * w_up;
                v[k] = x[k] * (2.0 * w_here + w_left + w_up);
            }
        }
        Ok(SplitGradient { u, v })
    }
}
