//! One generated QP: solve it with SGP Ritz and compare the recovered active
//! set with the generator's.

use sgp_ritz::qp::{generate_qp, Spectrum};
use sgp_ritz::solvers::{sgp_run, SgpOptions, StepRule, StopRule};

fn main() -> sgp_ritz::Result<()> {
    let inst = generate_qp(20, &Spectrum::Geometric, 8, 7)?;
    println!("n = 20, cond = {:.3e}, KKT residual {:.1e}", inst.condition_number(), inst.kkt_residual());
    let obj = inst.objective();
    let alpha0 = 1.0 / obj.diagonal().iter().fold(0.0_f64, |m, &v| m.max(v));
    let opts = SgpOptions { step: StepRule::Ritz { m: 3 }, alpha0, ..SgpOptions::default() };
    let run = sgp_run(&obj, &vec![1.0; 20], &opts, &StopRule::rre(inst.x_star.clone(), vec![1e-4, 1e-8], 5000))?;
    for (t, k) in &run.passages {
        println!("rre <= {t:e} after {k:?} iterations");
    }
    let found: Vec<usize> = (0..20).filter(|&j| run.x[j] == 0.0).collect();
    println!("generator active set {:?}", inst.active_set);
    println!("recovered active set {found:?}");
    println!("match: {}", found == inst.active_set);
    Ok(())
}
