use super::{Objective, SplitGradient};
use crate::image_ops::BlurOperator;
use crate::vecops::check_len;
use crate::{Error, Result};

/// Kullback-Leibler divergence of the model `A x + b` from Poisson data `y`:
/// `sum_i y_i ln(y_i / (Ax+b)_i) + (Ax+b)_i - y_i`, with `0 ln 0 = 0`.
///
/// Every evaluation requires `(Ax+b)_i > 0`; a non-positive model value is a
/// hard [`Error::KlDomain`], never clamped.
#[derive(Debug, Clone)]
pub struct KullbackLeibler {
    op: BlurOperator,
    data: Vec<f64>,
    background: Vec<f64>,
}

impl KullbackLeibler {
    pub fn new(op: BlurOperator, data: Vec<f64>, background: Vec<f64>) -> Result<Self> {
        check_len(op.len(), data.len())?;
        check_len(op.len(), background.len())?;
        if data.iter().chain(&background).any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidParameter(
                "KL data and background must be non-negative".into(),
            ));
        }
        Ok(Self { op, data, background })
    }

    pub fn with_scalar_background(op: BlurOperator, data: Vec<f64>, b: f64) -> Result<Self> {
        let bg = vec![b; op.len()];
        Self::new(op, data, bg)
    }

    pub fn operator(&self) -> &BlurOperator {
        &self.op
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn background(&self) -> &[f64] {
        &self.background
    }

    pub(crate) fn model(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut m = self.op.apply(x)?;
        for (i, (a, b)) in m.iter_mut().zip(&self.background).enumerate() {
            *a += b;
            if !(*a > 0.0) {
                return Err(Error::KlDomain { index: i, value: *a });
            }
        }
        Ok(m)
    }

    fn value_of_model(&self, m: &[f64]) -> f64 {
        m.iter()
            .zip(&self.data)
            .map(|(&mi, &yi)| if yi > 0.0 { yi * (yi / mi).ln() + mi - yi } else { mi })
            .sum()
    }
}

impl Objective for KullbackLeibler {
    fn dim(&self) -> usize {
        self.op.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.value_of_model(&self.model(x)?))
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (value, g, _) = self.value_grad_split(x)?;
        Ok((value, g))
    }

    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        Ok(self.value_grad_split(x)?.2)
    }

    /// `U = A^T (y / (Ax + b))`, `V = A^T 1`, and the gradient `V - U`.
    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        let m = self.model(x)?;
        let value = self.value_of_model(&m);
        let ratio: Vec<f64> = self.data.iter().zip(&m).map(|(y, mi)| y / mi).collect();
        let u: Vec<f64> = self.op.apply_adjoint(&ratio)?.into_iter().map(|v| v.max(0.0)).collect();
        let v = self.op.column_sums();
        let g = v.iter().zip(&u).map(|(vi, ui)| vi - ui).collect();
        Ok((value, g, SplitGradient { u, v }.validated()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_ops::PsfKernel;
    use crate::objectives::{fd_gradient, rel_err};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_hand_value() {
        // A = 1, b = 0, x = 1, y = 2: 2 ln 2 + 1 - 2
        let obj =
            KullbackLeibler::with_scalar_background(BlurOperator::new(&PsfKernel::delta(1)), vec![2.0], 0.0)
                .unwrap();
        let f = obj.value(&[1.0]).unwrap();
        assert!((f - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_data_convention() {
        let obj =
            KullbackLeibler::with_scalar_background(BlurOperator::new(&PsfKernel::delta(1)), vec![0.0], 0.0)
                .unwrap();
        assert_eq!(obj.value(&[1.0]).unwrap(), 1.0);
    }

    #[test]
    fn exact_model_is_zero() {
        let op = BlurOperator::new(&PsfKernel::gaussian(4, 1.0).unwrap());
        let x: Vec<f64> = (0..16).map(|v| 1.0 + v as f64).collect();
        let y: Vec<f64> = op.apply(&x).unwrap().into_iter().map(|v| v + 1.0).collect();
        let obj = KullbackLeibler::with_scalar_background(op, y, 1.0).unwrap();
        let (f, g) = obj.value_grad(&x).unwrap();
        assert!(f.abs() < 1e-12);
        assert!(crate::vecops::norm_inf(&g) < 1e-12);
    }

    #[test]
    fn domain_violation_is_an_error() {
        let obj =
            KullbackLeibler::with_scalar_background(BlurOperator::new(&PsfKernel::delta(2)), vec![1.0; 4], 0.0)
                .unwrap();
        let err = obj.value(&[1.0, 0.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::KlDomain { index: 1, .. }));
        assert!(obj.split_gradient(&[0.0; 4]).is_err());
    }

    #[test]
    fn gradient_and_splitting() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let op = BlurOperator::new(&PsfKernel::gaussian(8, 1.3).unwrap());
            let y: Vec<f64> = (0..64).map(|_| rng.random_range(0.0..20.0f64).floor()).collect();
            let x: Vec<f64> = (0..64).map(|_| rng.random_range(0.5..20.0)).collect();
            let obj = KullbackLeibler::with_scalar_background(op, y, 1.0).unwrap();
            let (f, g) = obj.value_grad(&x).unwrap();
            assert!(f >= 0.0);
            let fd = fd_gradient(&obj, &x, 1e-5);
            assert!(rel_err(&g, &fd) < 1e-5, "seed {seed}");

            let s = obj.split_gradient(&x).unwrap();
            let tol = 1e-10 * (1.0 + crate::vecops::norm_inf(&g));
            for k in 0..64 {
                assert!((s.u[k] - s.v[k] + g[k]).abs() <= tol);
                assert!(s.u[k] >= -1e-12);
                // unit column sums give V = 1
                assert!((s.v[k] - 1.0).abs() < 1e-12);
            }
        }
    }
}
