use super::Objective;
use crate::image_ops::difference::{divergence_flat, gradient_flat};
use crate::vecops::check_len;
use crate::{Error, Result};

/// Dual of the ROF denoising model: `W(p) = ||beta div(p) - y||^2` over the
/// stacked field `p` of length `2 n^2`.
///
/// The primal image is recovered as `x = y - beta div(p)`.
#[derive(Debug, Clone)]
pub struct RofDual {
    n: usize,
    data: Vec<f64>,
    beta: f64,
}

impl RofDual {
    pub fn new(n: usize, data: Vec<f64>, beta: f64) -> Result<Self> {
        check_len(n * n, data.len())?;
        if !(beta > 0.0) {
            return Err(Error::InvalidParameter(format!("ROF beta must be positive, got {beta}")));
        }
        Ok(Self { n, data, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// `x = y - beta div(p)`.
    pub fn primal(&self, p: &[f64]) -> Result<Vec<f64>> {
        check_len(2 * self.n * self.n, p.len())?;
        let div = divergence_flat(self.n, p);
        Ok(self.data.iter().zip(&div).map(|(y, d)| y - self.beta * d).collect())
    }

    /// Residual `beta div(p) - y`, which equals `-x`.
    fn residual(&self, p: &[f64]) -> Result<Vec<f64>> {
        check_len(2 * self.n * self.n, p.len())?;
        let div = divergence_flat(self.n, p);
        Ok(div.iter().zip(&self.data).map(|(d, y)| self.beta * d - y).collect())
    }
}

impl Objective for RofDual {
    fn dim(&self) -> usize {
        2 * self.n * self.n
    }

    fn value(&self, p: &[f64]) -> Result<f64> {
        let r = self.residual(p)?;
        Ok(crate::vecops::dot(&r, &r))
    }

    fn value_grad(&self, p: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = self.residual(p)?;
        let value = crate::vecops::dot(&r, &r);
        let mut g = gradient_flat(self.n, &r).to_stacked();
        let c = -2.0 * self.beta;
        g.iter_mut().for_each(|v| *v *= c);
        Ok((value, g))
    }

    /// `||div||^2 <= 8` on periodic grids, so `2 beta^2 * 8` bounds the gradient's Lipschitz constant.
    fn lipschitz(&self) -> Option<f64> {
        Some(16.0 * self.beta * self.beta)
    }

    /// `2 beta^2 ||div d||^2`.
    fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
        Some(check_len(self.dim(), d.len()).map(|_| {
            let div = divergence_flat(self.n, d);
            2.0 * self.beta * self.beta * crate::vecops::dot(&div, &div)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{fd_gradient, rel_err};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_field() {
        let y: Vec<f64> = (0..16).map(|v| v as f64).collect();
        let obj = RofDual::new(4, y.clone(), 2.0).unwrap();
        assert!((obj.value(&[0.0; 32]).unwrap() - crate::vecops::dot(&y, &y)).abs() < 1e-12);
        let zero = RofDual::new(4, vec![0.0; 16], 2.0).unwrap();
        let (f, g) = zero.value_grad(&[0.0; 32]).unwrap();
        assert_eq!(f, 0.0);
        assert!(g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let y: Vec<f64> = (0..64).map(|_| rng.random_range(0.0..10.0)).collect();
            let p: Vec<f64> = (0..128).map(|_| rng.random_range(-1.0..1.0)).collect();
            let obj = RofDual::new(8, y, 1.5).unwrap();
            let (_, g) = obj.value_grad(&p).unwrap();
            assert!(rel_err(&g, &fd_gradient(&obj, &p, 1e-5)) < 1e-5);
        }
    }

    #[test]
    fn primal_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y: Vec<f64> = (0..16).map(|_| rng.random_range(0.0..1.0)).collect();
        let p: Vec<f64> = (0..32).map(|_| rng.random_range(-1.0..1.0)).collect();
        let obj = RofDual::new(4, y, 3.0).unwrap();
        let x = obj.primal(&p).unwrap();
        let r = obj.residual(&p).unwrap();
        for (a, b) in x.iter().zip(&r) {
            assert!((a + b).abs() < 1e-14);
        }
    }
}
