use std::collections::VecDeque;

use super::StepBounds;
use crate::feasible::DiagScaling;

/// Scaled BB1: `s' D^-2 s / s' D^-1 z`.
pub fn bb1(s: &[f64], z: &[f64], d: &DiagScaling, bounds: StepBounds) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for ((si, zi), di) in s.iter().zip(z).zip(d.diag()) {
        num += si * si / (di * di);
        den += si * zi / di;
    }
    bounds.clamp(num / den)
}

/// Scaled BB2: `s' D z / z' D^2 z`.
pub fn bb2(s: &[f64], z: &[f64], d: &DiagScaling, bounds: StepBounds) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for ((si, zi), di) in s.iter().zip(z).zip(d.diag()) {
        num += si * zi * di;
        den += zi * zi * di * di;
    }
    bounds.clamp(num / den)
}

/// Parameters of the adaptive alternation. The threshold update factors and
/// history length are not fixed by the method itself; these are defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbbMin1Config {
    pub tau0: f64,
    pub tau_decrease: f64,
    pub tau_increase: f64,
    /// Number of recent BB2 values the minimum is taken over.
    pub history: usize,
    /// Leading BB calls that return plain BB2.
    pub bb2_warmup: usize,
}

impl Default for AbbMin1Config {
    fn default() -> Self {
        Self { tau0: 0.5, tau_decrease: 0.9, tau_increase: 1.1, history: 3, bb2_warmup: 20 }
    }
}

/// ABBmin1: BB1 while `bb2 / bb1 >= tau`, otherwise the minimum of the
/// recent BB2 values; `tau` adapts after each choice.
#[derive(Debug, Clone)]
pub struct AbbMin1 {
    cfg: AbbMin1Config,
    tau: f64,
    bb2_history: VecDeque<f64>,
    iter: usize,
}

impl AbbMin1 {
    pub fn new(cfg: AbbMin1Config) -> Self {
        Self { tau: cfg.tau0, cfg, bb2_history: VecDeque::new(), iter: 0 }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn select(&mut self, s: &[f64], z: &[f64], d: &DiagScaling, bounds: StepBounds) -> f64 {
        self.iter += 1;
        let a1 = bb1(s, z, d, bounds);
        let a2 = bb2(s, z, d, bounds);
        self.bb2_history.push_back(a2);
        while self.bb2_history.len() > self.cfg.history.max(1) {
            self.bb2_history.pop_front();
        }
        if self.iter <= self.cfg.bb2_warmup {
            return a2;
        }
        if a2 / a1 < self.tau {
            self.tau *= self.cfg.tau_decrease;
            self.bb2_history.iter().copied().fold(f64::INFINITY, f64::min)
        } else {
            self.tau *= self.cfg.tau_increase;
            a1
        }
    }
}
