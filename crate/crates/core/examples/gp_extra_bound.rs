//! Gradient projection with extrapolation on a QP, checking the objective
//! gap against `2 L d0^2 / (k + 1)^2` along the way.

use sgp_ritz::objectives::Objective;
use sgp_ritz::qp::{generate_qp, Spectrum};
use sgp_ritz::solvers::{gp_extra_run, StopRule};

fn main() -> sgp_ritz::Result<()> {
    let inst = generate_qp(20, &Spectrum::Geometric, 8, 11)?;
    let obj = inst.objective();
    let j_star = obj.value(&inst.x_star)?;
    let l = obj.lipschitz().unwrap();
    let x0 = vec![1.0; 20];
    let d0: f64 = x0.iter().zip(&inst.x_star).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let run = gp_extra_run(&obj, &x0, &StopRule::iterations(5000))?;
    let mut worst = 0.0_f64;
    for r in &run.history {
        let bound = 2.0 * l * d0 * d0 / ((r.iter + 1) as f64).powi(2);
        worst = worst.max((r.f - j_star) / bound);
        if [1, 10, 100, 1000, 5000].contains(&r.iter) {
            println!("k = {:5}  gap {:.3e}  bound {:.3e}", r.iter, r.f - j_star, bound);
        }
    }
    println!("max gap / bound = {worst:.3} (L = {l:.3e}, d0 = {d0:.3})");
    Ok(())
}
