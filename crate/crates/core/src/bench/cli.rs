//! Command-line front end: `gen-qp`, `synth`, `run`, `report`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use super::config::{ExperimentConfig, ProblemKind, ProblemSpec, ReferenceSpec, SolverSpec, StepKind};
use super::report::{render_table, report_dir};
use super::runner::{build_problem, run_experiment, Problem};
use crate::image_ops::matfile::{write_image, write_matrix};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "sgp-ritz", version, about = "Scaled gradient projection experiments with limited-memory Ritz steplengths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate QP instances (matrix, data, solution, multipliers) into `--out`.
    GenQp(CommonArgs),
    /// Synthesize blurred noisy data for an imaging config into `--out`.
    Synth(CommonArgs),
    /// Run an experiment and write CSV traces and summaries.
    Run(RunArgs),
    /// Print the summary of a finished run directory.
    Report {
        /// Run directory holding summary.csv.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Experiment configuration (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides the config's seed.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Output directory; defaults to the config's `out` or `out/<name>`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Run only these solvers (names from the config).
    #[arg(long, value_name = "NAME[,NAME...]", value_delimiter = ',')]
    pub solver: Vec<String>,
    /// Replaces the config's thresholds.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub threshold: Vec<f64>,
}

/// Default QP config used by `gen-qp` without `--config`.
fn default_qp_config() -> ExperimentConfig {
    ExperimentConfig {
        name: "qp".into(),
        seed: 1,
        out: None,
        thresholds: vec![1e-4, 1e-6, 1e-8],
        metric: None,
        max_iters: 5000,
        stop_when_passed: true,
        problem: ProblemSpec {
            kind: ProblemKind::Qp,
            n: 20,
            spectrum: None,
            n_active: None,
            instances: 1,
            qp_dir: None,
            phantom: None,
            image: None,
            data: None,
            psf: None,
            noise: None,
            background: 0.0,
            beta: None,
            delta: None,
            x0: None,
        },
        reference: ReferenceSpec::default(),
        solvers: vec![SolverSpec::sgp("ritz", StepKind::Ritz)],
    }
}

fn load(common: &CommonArgs, required: bool) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None if required => return Err(Error::Config("--config PATH is required".into())),
        None => default_qp_config(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn out_dir(common: &CommonArgs, cfg: &ExperimentConfig) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| Path::new("out").join(&cfg.name))
}

fn gen_qp(args: &CommonArgs) -> Result<()> {
    let cfg = load(args, false)?;
    if cfg.problem.kind != ProblemKind::Qp {
        return Err(Error::Config("gen-qp needs a config with problem.kind = \"qp\"".into()));
    }
    let out = out_dir(args, &cfg);
    let Problem::Qp(instances) = build_problem(&cfg)? else { unreachable!("qp config builds QPs") };
    for inst in &instances {
        let dir = out.join(format!("qp-seed{}", inst.seed));
        inst.save(&dir)?;
        println!(
            "{}: n = {}, {} active, cond = {:.4e}, KKT residual {:.2e}",
            dir.display(),
            inst.n(),
            inst.active_set.len(),
            inst.condition_number(),
            inst.kkt_residual()
        );
    }
    Ok(())
}

fn synth(args: &CommonArgs) -> Result<()> {
    let cfg = load(args, true)?;
    let out = out_dir(args, &cfg);
    let Problem::Imaging(prob) = build_problem(&cfg)? else {
        return Err(Error::Config("synth needs an imaging problem".into()));
    };
    std::fs::create_dir_all(&out)?;
    if let Some(t) = &prob.truth {
        write_image(&out.join("truth.txt"), t)?;
    }
    write_image(&out.join("data.txt"), &prob.data)?;
    write_matrix(&out.join("psf.txt"), prob.n(), prob.n(), prob.psf.weights())?;
    let neg = prob.data.values().iter().filter(|&&v| v < 0.0).count();
    println!("wrote truth.txt, data.txt, psf.txt to {} ({}x{}, {neg} negative pixels)", out.display(), prob.n(), prob.n());
    Ok(())
}

fn run(args: &RunArgs) -> Result<()> {
    let mut cfg = load(&args.common, true)?;
    if !args.solver.is_empty() {
        cfg.select_solvers(&args.solver)?;
    }
    if !args.threshold.is_empty() {
        cfg.thresholds = args.threshold.clone();
    }
    cfg.validate()?;
    let out = out_dir(&args.common, &cfg);
    let res = run_experiment(&cfg, &out)?;
    if let Some(r) = &res.reference {
        println!("reference optimum {:e} ({} iterations, {})", r.f_star, r.iterations, r.termination);
    }
    print!("{}", render_table(&res.summary_csv()));
    println!("reports written to {}", out.display());
    Ok(())
}

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenQp(a) => gen_qp(&a),
        Command::Synth(a) => synth(&a),
        Command::Run(a) => run(&a),
        Command::Report { out } => {
            print!("{}", report_dir(&out)?);
            Ok(())
        }
    }
}

/// Entry point of the `sgp-ritz` binary.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_lists() {
        let cli = Cli::try_parse_from([
            "sgp-ritz", "run", "--config", "c.toml", "--seed", "4", "--out", "o", "--solver", "a,b", "--threshold",
            "1e-4,1e-6",
        ])
        .unwrap();
        match cli.command {
            Command::Run(r) => {
                assert_eq!(r.solver, vec!["a", "b"]);
                assert_eq!(r.threshold, vec![1e-4, 1e-6]);
                assert_eq!(r.common.seed, Some(4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gen_qp_then_run_from_directory() {
        let dir = tempfile::tempdir().unwrap();
        let args = CommonArgs { config: None, seed: Some(9), out: Some(dir.path().to_path_buf()) };
        gen_qp(&args).unwrap();
        let qp_dir = dir.path().join("qp-seed9");
        assert!(qp_dir.join("A.txt").exists());
        let mut cfg = default_qp_config();
        cfg.problem.qp_dir = Some(qp_dir);
        cfg.validate().unwrap();
        let res = run_experiment(&cfg, &dir.path().join("run")).unwrap();
        assert_eq!(res.outcomes[0].seed, 9);
        assert!(res.outcomes[0].passage(1e-8).is_some());
        assert!(report_dir(&dir.path().join("run")).unwrap().contains("ritz"));
    }
}
