//! Kullback-Leibler deblurring of Poisson data: the experiment runner
//! compares SGP Ritz, SGP BB1 and Richardson-Lucy against a cached
//! reference optimum.

use sgp_ritz::bench::report::render_table;
use sgp_ritz::bench::{run_experiment, ExperimentConfig};

const CONFIG: &str = r#"
name = "kl-stars"
thresholds = [1e-2, 1e-4, 1e-6]
max_iters = 5000

[problem]
kind = "kl-deblur"
n = 64
phantom = "stars"
background = 100.0

[[solver]]
name = "ritz"
scaling = "split"

[[solver]]
name = "bb1"
step = "bb1"
scaling = "split"

[[solver]]
name = "rl"
method = "rl"
"#;

fn main() -> sgp_ritz::Result<()> {
    let cfg = ExperimentConfig::from_toml(CONFIG)?;
    let out = std::env::temp_dir().join("sgp-ritz-poisson-deblur");
    let res = run_experiment(&cfg, &out)?;
    let r = res.reference.as_ref().expect("imaging runs have a reference");
    println!("f* = {:e} ({} iterations)", r.f_star, r.iterations);
    print!("{}", render_table(&res.summary_csv()));
    println!("written to {}", out.display());
    Ok(())
}
