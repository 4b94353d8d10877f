//! Poisson deblurring with hypersurface regularization, from the
//! `configs/kl-hs-blocks.toml` setup at a smaller size.

use sgp_ritz::bench::report::render_table;
use sgp_ritz::bench::{run_experiment, ExperimentConfig};

fn main() -> sgp_ritz::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/kl-hs-blocks.toml");
    let mut cfg = ExperimentConfig::load(std::path::Path::new(path))?;
    cfg.problem.n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    cfg.name = format!("kl-hs-blocks-{}", cfg.problem.n);
    let out = std::env::temp_dir().join("sgp-ritz").join(&cfg.name);
    let res = run_experiment(&cfg, &out)?;
    println!(
        "beta = {}, delta = {}, n = {}, f* = {:e}",
        cfg.problem.beta(),
        cfg.problem.delta(),
        cfg.problem.n,
        res.reference.as_ref().map(|r| r.f_star).unwrap_or(f64::NAN)
    );
    print!("{}", render_table(&res.summary_csv()));
    Ok(())
}
