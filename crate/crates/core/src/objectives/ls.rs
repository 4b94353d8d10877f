use super::{Objective, SplitGradient};
use crate::image_ops::BlurOperator;
use crate::vecops::check_len;
use crate::Result;

/// `J(x) = 1/2 ||A x + b - y||^2`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    op: BlurOperator,
    data: Vec<f64>,
    background: Vec<f64>,
    /// `A^T y`, the constant `U` of the splitting.
    aty: Vec<f64>,
}

impl LeastSquares {
    pub fn new(op: BlurOperator, data: Vec<f64>, background: Vec<f64>) -> Result<Self> {
        check_len(op.len(), data.len())?;
        check_len(op.len(), background.len())?;
        let aty = op.apply_adjoint(&data)?;
        Ok(Self { op, data, background, aty })
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

    /// `max eig(A^T A)`.
    pub fn ls_lipschitz(&self) -> f64 {
        self.op.max_gain_squared()
    }

    fn model(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut ax = self.op.apply(x)?;
        for (a, b) in ax.iter_mut().zip(&self.background) {
            *a += b;
        }
        Ok(ax)
    }
}

impl Objective for LeastSquares {
    fn dim(&self) -> usize {
        self.op.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let m = self.model(x)?;
        Ok(0.5 * m.iter().zip(&self.data).map(|(a, y)| (a - y).powi(2)).sum::<f64>())
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let mut r = self.model(x)?;
        for (a, y) in r.iter_mut().zip(&self.data) {
            *a -= y;
        }
        let value = 0.5 * crate::vecops::dot(&r, &r);
        Ok((value, self.op.apply_adjoint(&r)?))
    }

    fn split_gradient(&self, x: &[f64]) -> Result<SplitGradient> {
        Ok(self.value_grad_split(x)?.2)
    }

    /// `U = A^T y` and `V = A^T (Ax + b) = grad + U`. Round-off can leave
    /// `V` a hair below zero where it vanishes; those entries are set to 0.
    fn value_grad_split(&self, x: &[f64]) -> Result<(f64, Vec<f64>, SplitGradient)> {
        let (value, g) = self.value_grad(x)?;
        let v = g.iter().zip(&self.aty).map(|(gi, ui)| (gi + ui).max(0.0)).collect();
        let split = SplitGradient { u: self.aty.clone(), v }.validated()?;
        Ok((value, g, split))
    }

    fn lipschitz(&self) -> Option<f64> {
        Some(self.ls_lipschitz())
    }

    /// `||Ad||^2`.
    fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
        Some(self.op.apply(d).map(|ad| crate::vecops::dot(&ad, &ad)))
    }
}
