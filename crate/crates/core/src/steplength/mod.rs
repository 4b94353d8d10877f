//! Steplength rules for (scaled) gradient projection.

mod bb;
mod ritz;

pub use bb::{bb1, bb2, AbbMin1, AbbMin1Config};
pub use ritz::{ritz_factorize, scaled_masked, RitzFactorization, RitzSweep};

use crate::{Error, Result};

/// Safeguard interval `[alpha_min, alpha_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepBounds {
    pub alpha_min: f64,
    pub alpha_max: f64,
}

impl StepBounds {
    pub fn new(alpha_min: f64, alpha_max: f64) -> Result<Self> {
        if !(alpha_min > 0.0 && alpha_min < alpha_max) {
            return Err(Error::InvalidParameter(format!(
                "steplength bounds need 0 < min < max, got [{alpha_min}, {alpha_max}]"
            )));
        }
        Ok(Self { alpha_min, alpha_max })
    }

    /// Clamp into the interval; non-positive or non-finite values map to `alpha_max`.
    pub fn clamp(&self, alpha: f64) -> f64 {
        if alpha.is_finite() && alpha > 0.0 {
            alpha.clamp(self.alpha_min, self.alpha_max)
        } else {
            self.alpha_max
        }
    }
}

impl Default for StepBounds {
    fn default() -> Self {
        Self { alpha_min: 1e-10, alpha_max: 1e5 }
    }
}
