//! Least-squares deblurring with split scaling: SGP Ritz against SGP BB1 and
//! ISRA on a noise-free blurred star field.

use sgp_ritz::bench::{synthesize_data, NoiseSpec, Phantom};
use sgp_ritz::feasible::ScalingRule;
use sgp_ritz::image_ops::{BlurOperator, PsfKernel};
use sgp_ritz::objectives::LeastSquares;
use sgp_ritz::solvers::{isra_run, sgp_run, SgpOptions, StepRule, StopRule};

fn main() -> sgp_ritz::Result<()> {
    let n = 64;
    let truth = Phantom::Stars.render(n)?;
    let psf = PsfKernel::gaussian(n, 1.3)?;
    // without noise the data stay non-negative, which ISRA needs
    let y = synthesize_data(&truth, &psf, &NoiseSpec::None, 0.0, 1)?;
    let obj = LeastSquares::with_scalar_background(BlurOperator::new(&psf), y.values().to_vec(), 0.0)?;
    let mean = y.values().iter().sum::<f64>() / (n * n) as f64;
    let x0 = vec![mean; n * n];
    let stop = StopRule::iterations(300).with_truth(truth.values().to_vec());

    for (name, step) in [("sgp ritz", StepRule::Ritz { m: 3 }), ("sgp bb1", StepRule::Bb1)] {
        let opts = SgpOptions { scaling: ScalingRule::Split, step, ..SgpOptions::default() };
        report(name, &sgp_run(&obj, &x0, &opts, &stop)?);
    }
    report("isra", &isra_run(&obj, &x0, &stop)?);
    Ok(())
}

fn report(name: &str, run: &sgp_ritz::solvers::SolverRun) {
    let (k, e) = run.min_rre().unwrap();
    println!("{name:9} f = {:.6e}  best rre {e:.3e} at iteration {k}", run.final_value());
}
