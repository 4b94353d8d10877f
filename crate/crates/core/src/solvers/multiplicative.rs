use super::stop::{Monitor, SolverRun, StopRule, Termination};
use crate::objectives::{KullbackLeibler, LeastSquares, Objective, SplitGradient};
use crate::vecops::check_len;
use crate::{Error, Result};

fn ratio_step(x: &[f64], split: &SplitGradient) -> Result<Vec<f64>> {
    x.iter()
        .zip(&split.u)
        .zip(&split.v)
        .enumerate()
        .map(|(i, ((xi, ui), vi))| {
            if *ui < 0.0 {
                // only possible with negative data; the update would leave the orthant
                Err(Error::InvalidParameter(format!("multiplicative update needs U >= 0, U[{i}] = {ui:e}")))
            } else if *vi == 0.0 {
                Err(Error::ZeroDenominator(i))
            } else {
                Ok(xi * ui / vi)
            }
        })
        .collect()
}

/// One ISRA step, `x * A'y / A'(Ax + b)`.
pub fn isra_step(obj: &LeastSquares, x: &[f64]) -> Result<Vec<f64>> {
    check_len(obj.dim(), x.len())?;
    ratio_step(x, &obj.split_gradient(x)?)
}

/// One Richardson-Lucy step, `x / A'1 * A'(y / (Ax + b))`.
pub fn rl_step(obj: &KullbackLeibler, x: &[f64]) -> Result<Vec<f64>> {
    check_len(obj.dim(), x.len())?;
    ratio_step(x, &obj.split_gradient(x)?)
}

fn multiplicative_run<O: Objective>(
    obj: &O,
    x0: &[f64],
    stop: &StopRule,
    step: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<SolverRun> {
    if x0.iter().any(|&v| !(v >= 0.0)) {
        return Err(Error::InvalidParameter("starting point must be non-negative".into()));
    }
    let mut x = x0.to_vec();
    let mut monitor = Monitor::new(stop);
    let mut term = monitor.observe(obj.value(&x)?, &x, None, None, 0.0, None);
    while term.is_none() {
        let next = step(&x).and_then(|xn| obj.value(&xn).map(|f| (xn, f)));
        match next {
            Ok((x_new, f)) => {
                let x_old = std::mem::replace(&mut x, x_new);
                let feas = x.iter().fold(0.0_f64, |m, &v| m.max(-v));
                term = monitor.observe(f, &x, Some(&x_old), Some((1.0, 1.0)), feas, None);
            }
            Err(e) => term = Some(Termination::Failed(e.to_string())),
        }
    }
    Ok(monitor.finish(x, term.expect("loop exits with a reason"), Vec::new()))
}

pub fn isra_run(obj: &LeastSquares, x0: &[f64], stop: &StopRule) -> Result<SolverRun> {
    multiplicative_run(obj, x0, stop, |x| isra_step(obj, x))
}

pub fn rl_run(obj: &KullbackLeibler, x0: &[f64], stop: &StopRule) -> Result<SolverRun> {
    multiplicative_run(obj, x0, stop, |x| rl_step(obj, x))
}
