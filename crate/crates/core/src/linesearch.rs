//! Armijo backtracking along a feasible direction, with an optional
//! nonmonotone reference value (max of the last `M` accepted objectives).

use std::collections::VecDeque;

use crate::objectives::Objective;
use crate::vecops::dot;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinesearchConfig {
    /// Window of accepted objective values for the reference; 1 is monotone.
    pub memory: usize,
    /// Sufficient-decrease coefficient.
    pub gamma: f64,
    /// Backtracking factor.
    pub sigma: f64,
    pub max_backtracks: usize,
}

impl LinesearchConfig {
    pub fn monotone() -> Self {
        Self::default()
    }

    pub fn nonmonotone(memory: usize) -> Self {
        Self { memory, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory == 0 || !(self.gamma > 0.0 && self.gamma < 1.0) || !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::InvalidParameter(format!("invalid linesearch configuration {self:?}")));
        }
        Ok(())
    }
}

impl Default for LinesearchConfig {
    fn default() -> Self {
        Self { memory: 1, gamma: 1e-4, sigma: 0.5, max_backtracks: 40 }
    }
}

/// Accepted objective values, newest last.
#[derive(Debug, Clone, Default)]
pub struct ObjectiveHistory {
    values: VecDeque<f64>,
    cap: usize,
}

impl ObjectiveHistory {
    pub fn new(memory: usize) -> Self {
        Self { values: VecDeque::with_capacity(memory), cap: memory.max(1) }
    }

    pub fn push(&mut self, f: f64) {
        self.values.push_back(f);
        while self.values.len() > self.cap {
            self.values.pop_front();
        }
    }

    pub fn reference(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Most recent value, the objective at the current iterate.
    pub fn last(&self) -> Option<f64> {
        self.values.back().copied()
    }
}

#[derive(Debug, Clone)]
pub struct LinesearchOutcome {
    pub lambda: f64,
    pub x_new: Vec<f64>,
    pub f_new: f64,
    /// Set when the backtracking limit was hit; `lambda` is then the smallest tried.
    pub limit_reached: bool,
}

/// Largest `lambda` in `{1, sigma, sigma^2, ...}` with
/// `J(x + lambda d) <= J_ref + gamma lambda g'd`.
///
/// The newest history entry must be `J(x)`. For quadratic objectives (see
/// [`Objective::curvature`]) the trial values are `J(x) + t g'd + t^2 d'Hd / 2`
/// rather than fresh evaluations, which keeps the test meaningful when the
/// decrease is below the rounding level of `J`. Objective-domain errors at a
/// trial point count as a failed trial.
pub fn armijo_search<O: Objective + ?Sized>(
    obj: &O,
    x: &[f64],
    d: &[f64],
    g: &[f64],
    history: &ObjectiveHistory,
    cfg: &LinesearchConfig,
) -> Result<LinesearchOutcome> {
    let f_ref = history
        .reference()
        .ok_or_else(|| Error::InvalidParameter("empty objective history".into()))?;
    let gd = dot(g, d);
    if d.iter().all(|&v| v == 0.0) {
        return Ok(LinesearchOutcome { lambda: 1.0, x_new: x.to_vec(), f_new: obj.value(x)?, limit_reached: false });
    }
    if gd >= 0.0 {
        return Err(Error::NotDescent(gd));
    }
    let curvature = obj.curvature(d).transpose()?;
    let f_x = history.last().expect("history checked non-empty");
    let mut lambda = 1.0;
    let mut last: Option<(Vec<f64>, Result<f64>)> = None;
    for _ in 0..=cfg.max_backtracks {
        let trial: Vec<f64> = x.iter().zip(d).map(|(xi, di)| xi + lambda * di).collect();
        let (f, accepted) = match curvature {
            Some(c) => {
                let change = lambda * gd + 0.5 * lambda * lambda * c;
                let ok = change <= (f_ref - f_x) + cfg.gamma * lambda * gd;
                (Ok(f_x + change), ok)
            }
            None => {
                let f = obj.value(&trial);
                let ok = matches!(f, Ok(fv) if fv <= f_ref + cfg.gamma * lambda * gd);
                (f, ok)
            }
        };
        if accepted {
            let f_new = f.expect("accepted trial has a value");
            return Ok(LinesearchOutcome { lambda, x_new: trial, f_new, limit_reached: false });
        }
        last = Some((trial, f));
        lambda *= cfg.sigma;
    }
    let (x_new, f) = last.expect("at least one trial");
    log::warn!("linesearch hit the backtracking limit ({} steps)", cfg.max_backtracks);
    // a last trial outside the objective's domain has no value
    Ok(LinesearchOutcome { lambda: lambda / cfg.sigma, x_new, f_new: f.unwrap_or(f64::NAN), limit_reached: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::Objective;

    struct HalfSquare;
    impl Objective for HalfSquare {
        fn dim(&self) -> usize {
            1
        }
        fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
            Ok((0.5 * x[0] * x[0], vec![x[0]]))
        }
    }

    struct Quartic;
    impl Objective for Quartic {
        fn dim(&self) -> usize {
            1
        }
        fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
            Ok((x[0].powi(4), vec![4.0 * x[0].powi(3)]))
        }
    }

    fn hist(vals: &[f64], m: usize) -> ObjectiveHistory {
        let mut h = ObjectiveHistory::new(m);
        vals.iter().for_each(|&v| h.push(v));
        h
    }

    #[test]
    fn zero_direction() {
        let out = armijo_search(&HalfSquare, &[1.0], &[0.0], &[1.0], &hist(&[0.5], 1), &LinesearchConfig::default())
            .unwrap();
        assert_eq!((out.lambda, out.x_new), (1.0, vec![1.0]));
    }

    #[test]
    fn full_step_accepted_on_half_square() {
        // J(0) = 0 <= 1/2 - 1e-4
        let out = armijo_search(&HalfSquare, &[1.0], &[-1.0], &[1.0], &hist(&[0.5], 1), &LinesearchConfig::default())
            .unwrap();
        assert_eq!(out.lambda, 1.0);
        assert_eq!(out.f_new, 0.0);
    }

    #[test]
    fn ascent_direction_rejected() {
        let r = armijo_search(&HalfSquare, &[1.0], &[1.0], &[1.0], &hist(&[0.5], 1), &LinesearchConfig::default());
        assert!(matches!(r, Err(Error::NotDescent(_))));
    }

    #[test]
    fn backtracks_on_overshoot() {
        // from x = 1 with d = -3: lambda = 1 gives 16, lambda = 0.5 gives 0.0625
        let out = armijo_search(&Quartic, &[1.0], &[-3.0], &[4.0], &hist(&[1.0], 1), &LinesearchConfig::default())
            .unwrap();
        assert_eq!(out.lambda, 0.5);
        assert!(out.f_new < 1.0);
    }

    #[test]
    fn nonmonotone_reference_accepts_increase() {
        // history max 5.0, current 4.9; the trial value 4.95 passes against 5.0
        struct Fixed;
        impl Objective for Fixed {
            fn dim(&self) -> usize {
                1
            }
            fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
                Ok((if x[0] == 0.0 { 4.9 } else { 4.95 }, vec![1.0]))
            }
        }
        let cfg = LinesearchConfig::nonmonotone(10);
        let out = armijo_search(&Fixed, &[0.0], &[-0.01], &[1.0], &hist(&[5.0, 4.9], 10), &cfg).unwrap();
        assert_eq!(out.lambda, 1.0);
        assert_eq!(out.f_new, 4.95);
        let mono = LinesearchConfig::monotone();
        let out = armijo_search(&Fixed, &[0.0], &[-0.01], &[1.0], &hist(&[5.0, 4.9], 1), &mono).unwrap();
        assert!(out.limit_reached);
    }

    #[test]
    fn monotone_decrease() {
        let cfg = LinesearchConfig::monotone();
        for x0 in [0.3, 1.0, 2.0, -1.5] {
            let (f, g) = Quartic.value_grad(&[x0]).unwrap();
            let d = [-g[0]];
            let out = armijo_search(&Quartic, &[x0], &d, &g, &hist(&[f], 1), &cfg).unwrap();
            assert!(out.lambda > 0.0 && out.lambda <= 1.0);
            assert!(out.f_new <= f + cfg.gamma * out.lambda * g[0] * d[0]);
            assert!(out.f_new < f);
        }
    }

    #[test]
    fn quadratic_trial_values_use_closed_form_change() {
        struct Shifted;
        impl Objective for Shifted {
            fn dim(&self) -> usize {
                1
            }
            fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
                Ok((0.5 * (x[0] - 3.0).powi(2) + 1e3, vec![x[0] - 3.0]))
            }
            fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
                Some(Ok(d[0] * d[0]))
            }
        }
        let x = [1.0];
        let (f, g) = Shifted.value_grad(&x).unwrap();
        // overshooting direction: lambda = 1 lands at 5 (no decrease), 0.5 at 3
        let d = [4.0];
        let out = armijo_search(&Shifted, &x, &d, &g, &hist(&[f], 1), &LinesearchConfig::monotone()).unwrap();
        assert_eq!(out.lambda, 0.5);
        assert_eq!(out.f_new, f + (0.5 * g[0] * d[0] + 0.125 * d[0] * d[0]));
        assert_eq!(out.f_new, Shifted.value(&out.x_new).unwrap());
    }

    #[test]
    fn history_window() {
        let h = hist(&[3.0, 1.0, 2.0], 2);
        assert_eq!(h.reference(), Some(2.0));
    }
}
