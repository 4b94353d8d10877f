use super::{Hypersurface, Objective, SplitGradient};
use crate::vecops::check_len;
use crate::{Error, Result};

/// `J0(x) + beta * J_HS(x)`; the splitting combines as `(U0 + beta U_R, V0 + beta V_R)`.
#[derive(Debug)]
pub struct Regularized<F> {
    fidelity: F,
    reg: Hypersurface,
    beta: f64,
}

impl<F: Objective> Regularized<F> {
    pub fn new(fidelity: F, reg: Hypersurface, beta: f64) -> Result<Self> {
        check_len(fidelity.dim(), reg.dim())?;
        if !(beta >= 0.0) {
            return Err(Error::InvalidParameter(format!("beta must be >= 0, got {beta}")));
        }
        Ok(Self { fidelity, reg, beta })
    }

    pub fn fidelity(&self) -> &F {
        &self.fidelity
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl<F: Objective> Objective for Regularized<F> {
    fn dim(&self) -> usize {
        self.fidelity.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.fidelity.value(x)? + self.beta * self.reg.value(x)?)
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (f0, mut g) = self.fidelity.value_grad(x)?;
        let (fr, gr) = self.reg.value_grad(x)?;
        for (a, b) in g.iter_mut().zip(&gr) {
            *a += self.beta * b;
        }
        Ok((f0 + self.beta * fr, g))
    }

    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        let mut s = self.fidelity.split_gradient(x)?;
        let r = self.reg.split_gradient(x)?;
        for k in 0..s.u.len() {
            s.u[k] += self.beta * r.u[k];
            s.v[k] += self.beta * r.v[k];
        }
        s.validated()
    }

    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        let (f0, mut g, mut s) = self.fidelity.value_grad_split(x)?;
        let (fr, gr, r) = self.reg.value_grad_split(x)?;
        for k in 0..g.len() {
            g[k] += self.beta * gr[k];
            s.u[k] += self.beta * r.u[k];
            s.v[k] += self.beta * r.v[k];
        }
        Ok((f0 + self.beta * fr, g, s.validated()?))
    }
}
