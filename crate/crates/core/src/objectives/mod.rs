//! Objective functions with gradients and `-grad J = U - V` splittings.
//!
//! All objectives act on flat vectors; imaging objectives interpret them as
//! row-major `n x n` images, the ROF dual on stacked `2 n^2` fields.

mod composite;
mod hs;
mod kl;
mod ls;
mod rof;

pub use composite::Regularized;
pub use hs::Hypersurface;
pub use kl::KullbackLeibler;
pub use ls::LeastSquares;
pub use rof::RofDual;

use crate::{Error, Result};

/// Decomposition `-grad J(x) = u - v` with `u >= 0` and `v >= 0`.
///
/// `v` is strictly positive wherever `x` is; zero entries of `v` can occur
/// on zero pixels and are floored by the scaling builder, not here.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGradient {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl SplitGradient {
    /// `v - u`, i.e. the gradient.
    pub fn gradient(&self) -> Vec<f64> {
        self.v.iter().zip(&self.u).map(|(v, u)| v - u).collect()
    }

    pub(crate) fn validated(self) -> Result<Self> {
        if let Some((index, &value)) =
            self.v.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::InvalidSplitting { index, value });
        }
        Ok(self)
    }
}

/// A differentiable objective `J`.
pub trait Objective {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.value_grad(x)?.0)
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)>;

    fn split_gradient(&self, _x: &[f64]) -> Result<SplitGradient> {
        Err(Error::NoSplitting)
    }

    /// Value, gradient and splitting at one point. Objectives whose pieces
    /// share operator applications override this.
    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        let (f, g) = self.value_grad(x)?;
        Ok((f, g, self.split_gradient(x)?))
    }

    /// Lipschitz constant of the gradient, when cheaply known.
    fn lipschitz(&self) -> Option<f64> {
        None
    }

    /// `d' H d` for objectives with a constant Hessian `H`, so that
    /// `J(x + t d) - J(x) = t g'd + t^2 d'Hd / 2` can be formed without
    /// cancellation. `None` for non-quadratic objectives.
    fn curvature(&self, _d: &[f64]) -> Option<Result<f64>> {
        None
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> Result<f64> {
        (**self).value(x)
    }
    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        (**self).value_grad(x)
    }
    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        (**self).split_gradient(x)
    }
    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        (**self).value_grad_split(x)
    }
    fn lipschitz(&self) -> Option<f64> {
        (**self).lipschitz()
    }
    fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
        (**self).curvature(d)
    }
}

impl<T: Objective + ?Sized> Objective for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> Result<f64> {
        (**self).value(x)
    }
    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        (**self).value_grad(x)
    }
    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        (**self).split_gradient(x)
    }
    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        (**self).value_grad_split(x)
    }
    fn lipschitz(&self) -> Option<f64> {
        (**self).lipschitz()
    }
    fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
        (**self).curvature(d)
    }
}

/// Central finite-difference gradient, for tests.
#[cfg(test)]
pub(crate) fn fd_gradient<O: Objective + ?Sized>(obj: &O, x: &[f64], h: f64) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|i| {
            let orig = xp[i];
            xp[i] = orig + h;
            let fp = obj.value(&xp).unwrap();
            xp[i] = orig - h;
            let fm = obj.value(&xp).unwrap();
            xp[i] = orig;
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    diff / crate::vecops::norm2(b).max(1e-300)
}
