//! Total-variation denoising through the ROF dual: gradient projection with
//! Ritz steplengths against Chambolle's fixed-step iteration.

use sgp_ritz::bench::{synthesize_data, NoiseSpec, Phantom};
use sgp_ritz::feasible::{DualField, FeasibleSet};
use sgp_ritz::image_ops::PsfKernel;
use sgp_ritz::objectives::RofDual;
use sgp_ritz::solvers::{chambolle_run, compute_rre, sgp_run, ChambolleOptions, SgpOptions, StepRule, StopRule};

fn main() -> sgp_ritz::Result<()> {
    let n = 32;
    // noise standard deviation 20 on a 0..255 image
    let variance = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(400.0);
    let truth = Phantom::Shapes.render(n)?;
    let noisy = synthesize_data(&truth, &PsfKernel::delta(n), &NoiseSpec::Gaussian { variance }, 0.0, 1)?;
    let rof = RofDual::new(n, noisy.values().to_vec(), 20.0)?;
    let p0 = DualField::zeros(n);
    let stop = StopRule::iterations(3000);

    let opts = SgpOptions { step: StepRule::Ritz { m: 3 }, feasible: FeasibleSet::UnitDiscs, ..SgpOptions::default() };
    let gp = sgp_run(&rof, &p0.values, &opts, &stop)?;
    let ch = chambolle_run(&rof, &p0, &ChambolleOptions::new(0.24)?, &stop)?;
    println!("noisy rre {:.4}", compute_rre(noisy.values(), truth.values())?);
    for (name, run) in [("gp ritz", &gp), ("chambolle", &ch)] {
        let x = rof.primal(&run.x)?;
        let feasible = DualField::new(n, run.x.clone())?.is_feasible();
        println!(
            "{name:9} dual f = {:.10e}  denoised rre {:.4}  feasible {feasible}",
            run.final_value(),
            compute_rre(&x, truth.values())?
        );
    }
    Ok(())
}
