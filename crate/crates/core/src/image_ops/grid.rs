use crate::{Error, Result};

/// Square image of side `n`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    n: usize,
    values: Vec<f64>,
}

impl ImageGrid {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        crate::vecops::check_len(n * n, values.len())?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite pixel at index {i}"
            )));
        }
        Ok(Self { n, values })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, values: vec![0.0; n * n] }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self { n, values: vec![c; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }
}

/// Convolution kernel on the same `n x n` grid as the image it blurs.
///
/// `center` is the pixel that acts as the kernel origin: a kernel with a single
/// 1 at `center` is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PsfKernel {
    n: usize,
    weights: Vec<f64>,
    center: (usize, usize),
}

impl PsfKernel {
    pub fn new(n: usize, weights: Vec<f64>, center: (usize, usize)) -> Result<Self> {
        crate::vecops::check_len(n * n, weights.len())?;
        if center.0 >= n || center.1 >= n {
            return Err(Error::InvalidParameter(format!(
                "PSF center {center:?} outside a {n}x{n} grid"
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::DegeneratePsf);
        }
        Ok(Self { n, weights, center })
    }

    /// Kernel with a single unit weight at `(0, 0)`.
    pub fn delta(n: usize) -> Self {
        let mut weights = vec![0.0; n * n];
        weights[0] = 1.0;
        Self { n, weights, center: (0, 0) }
    }

    /// Sampled isotropic Gaussian with standard deviation `sigma` (pixels),
    /// centered at `(n / 2, n / 2)` and normalized to unit sum.
    pub fn gaussian(n: usize, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        let c = n / 2;
        let two_s2 = 2.0 * sigma * sigma;
        let mut weights = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let di = i as f64 - c as f64;
                let dj = j as f64 - c as f64;
                weights.push((-(di * di + dj * dj) / two_s2).exp());
            }
        }
        Self::new(n, weights, (c, c))?.normalized()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn center(&self) -> (usize, usize) {
        self.center
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Rescale the weights to sum to one.
    pub fn normalized(&self) -> Result<Self> {
        let s = self.sum();
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::DegeneratePsf);
        }
        Ok(Self {
            n: self.n,
            weights: self.weights.iter().map(|w| w / s).collect(),
            center: self.center,
        })
    }

    /// Multiply every weight by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.weights.iter().map(|w| w * c).collect(), self.center)
    }

    /// Weights circularly shifted so that `center` lands on `(0, 0)`.
    pub(crate) fn origin_shifted(&self) -> Vec<f64> {
        let n = self.n;
        let (ci, cj) = self.center;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let si = (i + n - ci) % n;
                let sj = (j + n - cj) % n;
                out[si * n + sj] = self.weights[i * n + j];
            }
        }
        out
    }
}

/// Forward differences `(x[i+1,j] - x[i,j], x[i,j+1] - x[i,j])` on an `n x n` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub n: usize,
    pub comp1: Vec<f64>,
    pub comp2: Vec<f64>,
}

impl GradientField {
    /// Stacked `[comp1; comp2]` layout, `2 n^2` entries, pixel `i` paired with `i + n^2`.
    pub fn to_stacked(&self) -> Vec<f64> {
        let mut v = self.comp1.clone();
        v.extend_from_slice(&self.comp2);
        v
    }

    pub fn from_stacked(n: usize, p: &[f64]) -> Result<Self> {
        crate::vecops::check_len(2 * n * n, p.len())?;
        let (a, b) = p.split_at(n * n);
        Ok(Self { n, comp1: a.to_vec(), comp2: b.to_vec() })
    }
}

/// Normalize a kernel to unit sum; errors on an all-zero kernel.
pub fn psf_normalize(psf: &PsfKernel) -> Result<PsfKernel> {
    psf.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_is_already_normalized() {
        let d = PsfKernel::delta(4);
        assert_eq!(d.normalized().unwrap(), d);
    }

    #[test]
    fn uniform_two_by_two() {
        let k = PsfKernel::new(2, vec![1.0; 4], (0, 0)).unwrap();
        let k = psf_normalize(&k).unwrap();
        assert!(k.weights().iter().all(|&w| w == 0.25));
    }

    #[test]
    fn gaussian_three_by_three_sums_to_one() {
        // direct sum of the raw samples as the oracle
        let sigma: f64 = 1.3;
        let raw: Vec<f64> = (0..9)
            .map(|k| {
                let (di, dj) = ((k / 3) as f64 - 1.0, (k % 3) as f64 - 1.0);
                (-(di * di + dj * dj) / (2.0 * sigma * sigma)).exp()
            })
            .collect();
        let s: f64 = raw.iter().sum();
        let k = PsfKernel::gaussian(3, sigma).unwrap();
        assert!((k.sum() - 1.0).abs() < 1e-12);
        for (w, r) in k.weights().iter().zip(&raw) {
            assert!((w - r / s).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_kernel_is_degenerate() {
        let k = PsfKernel::new(3, vec![0.0; 9], (1, 1)).unwrap();
        assert!(matches!(k.normalized(), Err(Error::DegeneratePsf)));
        assert!(matches!(
            PsfKernel::new(2, vec![1.0, -1.0, 0.0, 0.0], (0, 0)),
            Err(Error::DegeneratePsf)
        ));
    }

    #[test]
    fn image_rejects_nan() {
        assert!(ImageGrid::new(1, vec![f64::NAN]).is_err());
        assert!(ImageGrid::new(2, vec![0.0; 3]).is_err());
    }
}
