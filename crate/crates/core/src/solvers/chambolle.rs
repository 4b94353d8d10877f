use super::stop::{Monitor, SolverRun, StopRule, Termination};
use crate::feasible::{DualField, FeasibleSet};
use crate::objectives::{Objective, RofDual};
use crate::vecops::check_len;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChambolleOptions {
    /// Fixed step, `0 < tau < 1/4`.
    pub tau: f64,
    /// Use the variant that divides by the old pair norm instead of the
    /// semi-implicit `1 + tau |.|` denominator. Undefined at zero pairs.
    pub literal: bool,
}

impl ChambolleOptions {
    pub fn new(tau: f64) -> Result<Self> {
        let opts = Self { tau, literal: false };
        opts.validate()?;
        Ok(opts)
    }

    fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 0.25) {
            return Err(Error::InvalidParameter(format!("Chambolle step must lie in (0, 1/4), got {}", self.tau)));
        }
        Ok(())
    }
}

/// Chambolle's fixed-step iteration for the dual ROF problem.
///
/// With `h = grad W(p) / (2 beta^2)`, each pixel pair is updated as
/// `p <- (p - tau h) / (1 + tau |h|)`. The objective recorded per
/// iteration is `W(p)`; the primal image is `obj.primal(&run.x)`.
pub fn chambolle_run(obj: &RofDual, p0: &DualField, opts: &ChambolleOptions, stop: &StopRule) -> Result<SolverRun> {
    opts.validate()?;
    check_len(obj.dim(), p0.values.len())?;
    let set = FeasibleSet::UnitDiscs;
    if set.violation(&p0.values) > 0.0 {
        return Err(Error::InvalidParameter("starting dual field is not feasible".into()));
    }
    let half = obj.dim() / 2;
    let scale = 1.0 / (2.0 * obj.beta() * obj.beta());
    let tau = opts.tau;

    let mut p = p0.values.clone();
    let mut monitor = Monitor::new(stop);
    let (f0, mut g) = obj.value_grad(&p)?;
    let mut term = monitor.observe(f0, &p, None, None, 0.0, None);
    while term.is_none() {
        let mut next = vec![0.0; p.len()];
        let mut failure = None;
        for i in 0..half {
            let j = i + half;
            if opts.literal {
                let den = p[i].hypot(p[j]);
                if den == 0.0 {
                    failure = Some(Error::ZeroDenominator(i));
                    break;
                }
                next[i] = (p[i] - tau * g[i]) / den;
                next[j] = (p[j] - tau * g[j]) / den;
            } else {
                let (hi, hj) = (scale * g[i], scale * g[j]);
                let den = 1.0 + tau * hi.hypot(hj);
                next[i] = (p[i] - tau * hi) / den;
                next[j] = (p[j] - tau * hj) / den;
            }
        }
        if let Some(e) = failure {
            term = Some(Termination::Failed(e.to_string()));
            break;
        }
        let (f, g_new) = obj.value_grad(&next)?;
        let p_old = std::mem::replace(&mut p, next);
        g = g_new;
        term = monitor.observe(f, &p, Some(&p_old), Some((tau, 1.0)), set.violation(&p), None);
    }
    Ok(monitor.finish(p, term.expect("loop exits with a reason"), Vec::new()))
}
