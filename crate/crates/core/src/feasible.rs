//! Feasible sets, their projections, and diagonal scaling matrices.

use crate::objectives::SplitGradient;
use crate::vecops::check_len;
use crate::{Error, Result};

/// Floor applied to the splitting denominator before division.
pub const SPLIT_DENOMINATOR_FLOOR: f64 = 1e-12;

/// Clamp interval `[l1, l2]` for the scaling diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampBounds {
    pub l1: f64,
    pub l2: f64,
}

impl ClampBounds {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if !(l1 > 0.0 && l1 <= l2) {
            return Err(Error::InvalidParameter(format!(
                "scaling bounds need 0 < l1 <= l2, got [{l1}, {l2}]"
            )));
        }
        Ok(Self { l1, l2 })
    }
}

impl Default for ClampBounds {
    fn default() -> Self {
        Self { l1: 1e-5, l2: 1e5 }
    }
}

/// Diagonal of a positive definite scaling matrix `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagScaling {
    d: Vec<f64>,
}

impl DiagScaling {
    pub fn identity(len: usize) -> Self {
        Self { d: vec![1.0; len] }
    }

    /// Clamps `raw` into `bounds`.
    pub fn clamped(raw: Vec<f64>, bounds: ClampBounds) -> Self {
        let d = raw.into_iter().map(|v| v.clamp(bounds.l1, bounds.l2)).collect();
        Self { d }
    }

    pub fn diag(&self) -> &[f64] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.d.iter().all(|&v| v == 1.0)
    }
}

/// Rule producing `D_k` at each iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingRule {
    Identity,
    /// Inverse of a fixed diagonal, e.g. `1 / diag(A)` for a QP.
    InverseDiagonal(Vec<f64>),
    /// Coleman-Li: `x_i` where `g_i >= 0`, else 1.
    ColemanLi,
    /// The current iterate.
    Iterate,
    /// `x / (V0 + beta V_R)` from the gradient splitting.
    Split,
}

impl ScalingRule {
    pub fn needs_split(&self) -> bool {
        matches!(self, ScalingRule::Split)
    }
}

/// Builds `D_k` for `rule` at iterate `x` with gradient `grad`; `split` must
/// be present for [`ScalingRule::Split`]. Output entries lie in `[l1, l2]`.
pub fn build_scaling(
    rule: &ScalingRule,
    x: &[f64],
    grad: &[f64],
    split: Option<&SplitGradient>,
    bounds: ClampBounds,
) -> Result<DiagScaling> {
    check_len(x.len(), grad.len())?;
    let raw: Vec<f64> = match rule {
        ScalingRule::Identity => vec![1.0; x.len()],
        ScalingRule::InverseDiagonal(diag) => {
            check_len(x.len(), diag.len())?;
            if let Some(i) = diag.iter().position(|&a| !(a > 0.0)) {
                return Err(Error::ZeroDenominator(i));
            }
            diag.iter().map(|a| 1.0 / a).collect()
        }
        ScalingRule::ColemanLi => {
            x.iter().zip(grad).map(|(&xi, &gi)| if gi >= 0.0 { xi } else { 1.0 }).collect()
        }
        ScalingRule::Iterate => x.to_vec(),
        ScalingRule::Split => {
            let s = split.ok_or(Error::NoSplitting)?;
            check_len(x.len(), s.v.len())?;
            let mut out = Vec::with_capacity(x.len());
            for (i, (&xi, &vi)) in x.iter().zip(&s.v).enumerate() {
                let den = vi.max(SPLIT_DENOMINATOR_FLOOR);
                if !den.is_finite() {
                    return Err(Error::ZeroDenominator(i));
                }
                out.push(xi / den);
            }
            out
        }
    };
    Ok(DiagScaling::clamped(raw, bounds))
}

/// Stacked dual variable of length `2 n^2`; pixel `i` pairs entries `i` and `i + n^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualField {
    pub n: usize,
    pub values: Vec<f64>,
}

impl DualField {
    pub fn zeros(n: usize) -> Self {
        Self { n, values: vec![0.0; 2 * n * n] }
    }

    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_len(2 * n * n, values.len())?;
        Ok(Self { n, values })
    }

    pub fn max_pair_norm(&self) -> f64 {
        max_pair_norm(&self.values)
    }

    pub fn is_feasible(&self) -> bool {
        self.max_pair_norm() <= 1.0 + DISC_SLACK
    }
}

/// `max(x, 0)` componentwise. For a diagonal metric the projection is
/// separable, so `d` does not change the result.
pub fn project_nonneg(x: &[f64], d: &DiagScaling) -> Vec<f64> {
    debug_assert_eq!(x.len(), d.len());
    x.iter().map(|&v| v.max(0.0)).collect()
}

/// Euclidean projection onto the per-pixel unit discs.
pub fn project_disc(p: &DualField) -> DualField {
    DualField { n: p.n, values: project_disc_flat(&p.values) }
}

/// Pair norms within this of 1 count as on the disc; dividing by the norm
/// can land one ulp outside, and re-projecting must be a no-op.
const DISC_SLACK: f64 = 1e-14;

pub(crate) fn project_disc_flat(p: &[f64]) -> Vec<f64> {
    let half = p.len() / 2;
    let mut out = p.to_vec();
    for i in 0..half {
        let rho = p[i].hypot(p[i + half]);
        if rho > 1.0 + DISC_SLACK {
            out[i] = p[i] / rho;
            out[i + half] = p[i + half] / rho;
        }
    }
    out
}

fn max_pair_norm(p: &[f64]) -> f64 {
    let half = p.len() / 2;
    (0..half).map(|i| p[i].hypot(p[i + half])).fold(0.0, f64::max)
}

/// Constraint set of a projected-gradient run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeasibleSet {
    #[default]
    NonNegative,
    /// Stacked `2 n^2` fields with each pair in the closed unit disc.
    UnitDiscs,
}

impl FeasibleSet {
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        match self {
            FeasibleSet::NonNegative => x.iter().map(|&v| v.max(0.0)).collect(),
            FeasibleSet::UnitDiscs => project_disc_flat(x),
        }
    }

    /// Amount by which `x` violates the constraints (0 when feasible, up to
    /// rounding on the disc boundary).
    pub fn violation(&self, x: &[f64]) -> f64 {
        match self {
            FeasibleSet::NonNegative => x.iter().fold(0.0_f64, |m, &v| m.max(-v)),
            FeasibleSet::UnitDiscs => {
                let excess = max_pair_norm(x) - 1.0;
                if excess > DISC_SLACK { excess } else { 0.0 }
            }
        }
    }

    /// Active components, whose gradient entries are zeroed in the Ritz history.
    ///
    /// Non-negativity marks `j` with `x_j = 0`. Unit discs mark the
    /// components moved by the projection, detected by
    /// `|d_j + alpha g_j| >= eps` with `d = P(x - alpha g) - x`.
    pub fn active_mask(&self, x: &[f64], g: &[f64], alpha: f64, d: &[f64], eps: f64) -> Vec<bool> {
        match self {
            FeasibleSet::NonNegative => x.iter().map(|&v| v == 0.0).collect(),
            FeasibleSet::UnitDiscs => {
                d.iter().zip(g).map(|(dj, gj)| (dj + alpha * gj).abs() >= eps).collect()
            }
        }
    }
}
