use super::stop::{Monitor, SolverRun, StopRule};
use crate::feasible::FeasibleSet;
use crate::objectives::Objective;
use crate::vecops::check_len;
use crate::{Error, Result};

/// `theta_0 = theta_1 = 2/3`, then `theta_k = 2 / (k + 2)`.
pub fn gp_extra_theta(k: usize) -> f64 {
    2.0 / (k.max(1) as f64 + 2.0)
}

/// `eta_k = theta_k (1 - theta_{k-1}) / theta_{k-1}`; `eta_0` multiplies
/// `x0 - x_{-1} = 0` and is reported as 0.
pub fn gp_extra_eta(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let prev = gp_extra_theta(k - 1);
    gp_extra_theta(k) * (1.0 - prev) / prev
}

/// Gradient projection with extrapolation and fixed step `1/L`:
/// `xb = x_k + eta_k (x_k - x_{k-1})`, `x_{k+1} = P(xb - grad J(xb) / L)`.
pub fn gp_extra_run<O: Objective + ?Sized>(obj: &O, x0: &[f64], stop: &StopRule) -> Result<SolverRun> {
    check_len(obj.dim(), x0.len())?;
    let lip = obj
        .lipschitz()
        .filter(|l| *l > 0.0 && l.is_finite())
        .ok_or_else(|| Error::InvalidParameter("GP Extra needs the gradient's Lipschitz constant".into()))?;
    let set = FeasibleSet::NonNegative;
    if set.violation(x0) > 0.0 {
        return Err(Error::InvalidParameter("starting point is not feasible".into()));
    }
    let step = 1.0 / lip;
    let mut x = x0.to_vec();
    let mut x_prev = x.clone();
    let mut monitor = Monitor::new(stop);
    let mut term = monitor.observe(obj.value(&x)?, &x, None, None, 0.0, None);
    let mut k = 0;
    while term.is_none() {
        let eta = gp_extra_eta(k);
        let xb: Vec<f64> = x.iter().zip(&x_prev).map(|(a, b)| a + eta * (a - b)).collect();
        let next = obj.value_grad(&xb).and_then(|(_, gb)| {
            let x_new = set.project(&xb.iter().zip(&gb).map(|(a, g)| a - step * g).collect::<Vec<_>>());
            obj.value(&x_new).map(|f| (x_new, f))
        });
        let (x_new, f_new) = match next {
            Ok(v) => v,
            Err(e) => {
                term = Some(super::Termination::Failed(e.to_string()));
                break;
            }
        };
        x_prev = std::mem::replace(&mut x, x_new);
        k += 1;
        term = monitor.observe(f_new, &x, Some(&x_prev), Some((step, 1.0)), set.violation(&x), None);
    }
    Ok(monitor.finish(x, term.expect("loop exits with a reason"), Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{generate_qp, Spectrum};
    use crate::solvers::{sgp_run, SgpOptions};
    use crate::vecops::{norm2, sub};

    #[test]
    fn theta_conditions() {
        assert_eq!(gp_extra_theta(0), gp_extra_theta(1));
        for k in 0..=10_000 {
            let t = gp_extra_theta(k);
            let t1 = gp_extra_theta(k + 1);
            assert!((1.0 - t1) / (t1 * t1) <= 1.0 / (t * t) + 1e-12);
            assert!(t <= 2.0 / (k as f64 + 2.0));
            assert!(t > 0.0 && t <= 1.0);
        }
    }

    #[test]
    fn first_eta() {
        let (t0, t1) = (gp_extra_theta(0), gp_extra_theta(1));
        assert_eq!(gp_extra_eta(1), t1 * (1.0 - t0) / t0);
        assert!((gp_extra_eta(1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((1..100).all(|k| gp_extra_eta(k) > 0.0 && gp_extra_eta(k) < 1.0));
    }

    #[test]
    fn objective_bound_on_qp() {
        let inst = generate_qp(20, &Spectrum::Geometric, 8, 21).unwrap();
        let obj = inst.objective();
        let j_star = obj.value(&inst.x_star).unwrap();
        let l = obj.lipschitz().unwrap();
        let x0 = vec![1.0; 20];
        let d0 = norm2(&sub(&x0, &inst.x_star));
        let run = gp_extra_run(&obj, &x0, &StopRule::iterations(2000)).unwrap();
        for r in &run.history[1..] {
            let bound = 2.0 * l * d0 * d0 / ((r.iter + 1) as f64).powi(2);
            assert!(r.f - j_star <= bound, "k = {}", r.iter);
        }
        assert!(run.final_value() - j_star < 1e-6 * j_star.abs().max(1.0));
    }

    #[test]
    fn missing_lipschitz_is_an_error() {
        struct NoL;
        impl Objective for NoL {
            fn dim(&self) -> usize {
                1
            }
            fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
                Ok((x[0] * x[0], vec![2.0 * x[0]]))
            }
        }
        assert!(gp_extra_run(&NoL, &[1.0], &StopRule::iterations(3)).is_err());
        // same objective is fine for SGP
        assert!(sgp_run(&NoL, &[1.0], &SgpOptions::default(), &StopRule::iterations(3)).is_ok());
    }
}
