//! Runs any experiment config, like `sgp-ritz run --config PATH`.
//!
//!     cargo run --release --example run_config -- configs/qp.toml [out-dir]

use std::path::PathBuf;

use sgp_ritz::bench::report::report_dir;
use sgp_ritz::bench::{run_experiment, ExperimentConfig};

fn main() -> sgp_ritz::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = PathBuf::from(args.next().unwrap_or_else(|| "configs/qp.toml".into()));
    let cfg = ExperimentConfig::load(&path)?;
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out").join(&cfg.name));
    run_experiment(&cfg, &out)?;
    print!("{}", report_dir(&out)?);
    Ok(())
}
