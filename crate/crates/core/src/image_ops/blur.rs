use rustfft::num_complex::Complex64;

use super::fft2::Fft2;
use super::{ImageGrid, PsfKernel};
use crate::vecops::check_len;
use crate::Result;

/// Circular convolution with a PSF, applied in the Fourier domain.
///
/// The kernel is shifted so that its center sits at `(0, 0)` before the
/// transform, so `apply` of a delta kernel is the identity and the operator
/// matrix `A` has column sums equal to the kernel sum.
#[derive(Debug, Clone)]
pub struct BlurOperator {
    n: usize,
    spectrum: Vec<Complex64>,
    fft: Fft2,
}

impl BlurOperator {
    pub fn new(psf: &PsfKernel) -> Self {
        let n = psf.n();
        let fft = Fft2::new(n);
        let mut spectrum: Vec<Complex64> =
            psf.origin_shifted().into_iter().map(|w| Complex64::new(w, 0.0)).collect();
        fft.forward(&mut spectrum);
        Self { n, spectrum, fft }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// `A x` on a flat row-major vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.filter(x, false)
    }

    /// `A^T y` on a flat row-major vector.
    pub fn apply_adjoint(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.filter(y, true)
    }

    pub fn convolve(&self, x: &ImageGrid) -> Result<ImageGrid> {
        check_len(self.n, x.n())?;
        ImageGrid::new(self.n, self.apply(x.values())?)
    }

    pub fn convolve_adjoint(&self, y: &ImageGrid) -> Result<ImageGrid> {
        check_len(self.n, y.n())?;
        ImageGrid::new(self.n, self.apply_adjoint(y.values())?)
    }

    /// Largest eigenvalue of `A^T A`, i.e. `max |a_hat|^2` over frequencies.
    pub fn max_gain_squared(&self) -> f64 {
        self.spectrum.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max)
    }

    /// `A^T 1`; every entry equals the kernel sum.
    pub fn column_sums(&self) -> Vec<f64> {
        let s = self.spectrum[0].re;
        vec![s; self.len()]
    }

    fn filter(&self, x: &[f64], adjoint: bool) -> Result<Vec<f64>> {
        check_len(self.len(), x.len())?;
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fft.forward(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= if adjoint { s.conj() } else { *s };
        }
        self.fft.inverse(&mut buf);
        let scale = 1.0 / self.len() as f64;
        Ok(buf.into_iter().map(|c| c.re * scale).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct O(n^4) circular convolution used as the oracle.
    fn circular_direct(psf: &PsfKernel, x: &[f64]) -> Vec<f64> {
        let n = psf.n();
        let (ci, cj) = psf.center();
        let w = psf.weights();
        let mut out = vec![0.0; n * n];
        for pi in 0..n {
            for pj in 0..n {
                let mut acc = 0.0;
                for ki in 0..n {
                    for kj in 0..n {
                        // kernel offset relative to its center
                        let di = (ki + n - ci) % n;
                        let dj = (kj + n - cj) % n;
                        let si = (pi + n - di) % n;
                        let sj = (pj + n - dj) % n;
                        acc += w[ki * n + kj] * x[si * n + sj];
                    }
                }
                out[pi * n + pj] = acc;
            }
        }
        out
    }

    fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
        (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
    }

    #[test]
    fn delta_is_identity() {
        let op = BlurOperator::new(&PsfKernel::delta(5));
        let x: Vec<f64> = (0..25).map(|v| v as f64).collect();
        let y = op.apply(&x).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-12);
        }
        let z = op.apply_adjoint(&x).unwrap();
        for (a, b) in x.iter().zip(&z) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_image_preserved_by_normalized_psf() {
        let op = BlurOperator::new(&PsfKernel::gaussian(8, 1.3).unwrap());
        let y = op.apply(&vec![3.5; 64]).unwrap();
        assert!(y.iter().all(|v| (v - 3.5).abs() < 1e-12));
    }

    #[test]
    fn two_by_two_matches_direct_sum() {
        let psf = PsfKernel::new(2, vec![0.5, 0.5, 0.0, 0.0], (0, 0)).unwrap();
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let expect = circular_direct(&psf, &x);
        // hand check: output(p) = 0.5 x(p) + 0.5 x(p - (0,1))
        assert_eq!(expect, vec![1.5, 1.5, 3.5, 3.5]);
        let got = BlurOperator::new(&psf).apply(&x).unwrap();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn off_center_kernel_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 5;
        let w: Vec<f64> = (0..n * n).map(|_| rng.random_range(0.0..1.0)).collect();
        let psf = PsfKernel::new(n, w, (3, 1)).unwrap();
        let x = random_vec(&mut rng, n * n);
        let expect = circular_direct(&psf, &x);
        let got = BlurOperator::new(&psf).apply(&x).unwrap();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_psf_is_self_adjoint() {
        let op = BlurOperator::new(&PsfKernel::gaussian(6, 1.0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_vec(&mut rng, 36);
        let a = op.apply(&x).unwrap();
        let b = op.apply_adjoint(&x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn adjoint_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(2..9);
            let w: Vec<f64> = (0..n * n).map(|_| rng.random_range(0.0..1.0)).collect();
            let c = (rng.random_range(0..n), rng.random_range(0..n));
            let op = BlurOperator::new(&PsfKernel::new(n, w, c).unwrap());
            let x = random_vec(&mut rng, n * n);
            let y = random_vec(&mut rng, n * n);
            let lhs = crate::vecops::dot(&op.apply(&x).unwrap(), &y);
            let rhs = crate::vecops::dot(&x, &op.apply_adjoint(&y).unwrap());
            let scale = crate::vecops::norm2(&x) * crate::vecops::norm2(&y);
            assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn parseval_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let op = BlurOperator::new(&PsfKernel::gaussian(8, 1.3).unwrap());
        let x = random_vec(&mut rng, 64);
        let ax = op.apply(&x).unwrap();
        let spatial = crate::vecops::dot(&ax, &ax);
        let fft = Fft2::new(8);
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft.forward(&mut buf);
        let spectral: f64 =
            buf.iter().zip(op.spectrum()).map(|(b, s)| (b * s).norm_sqr()).sum::<f64>() / 64.0;
        assert!((spatial.sqrt() - spectral.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn nonnegative_inputs_give_nonnegative_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let op = BlurOperator::new(&PsfKernel::gaussian(16, 2.0).unwrap());
        let x: Vec<f64> = (0..256).map(|_| rng.random_range(0.0..10.0)).collect();
        // FFT round-off can produce tiny negatives; the exact result is >= 0
        assert!(op.apply(&x).unwrap().iter().all(|&v| v > -1e-12));
    }

    #[test]
    fn size_mismatch() {
        let op = BlurOperator::new(&PsfKernel::delta(4));
        assert!(op.apply(&[0.0; 15]).is_err());
    }
}
