//! Experiment configuration, data synthesis, runs, metrics and reports.

pub mod cli;
pub mod config;
pub mod data;
pub mod qp_study;
pub mod report;
pub mod runner;

pub use crate::solvers::{compute_gap, compute_rre, Gap};
pub use config::{ExperimentConfig, Metric, ProblemKind, SolverSpec};
pub use data::{synthesize_data, NoiseSpec, Phantom};
pub use runner::{execute, run_experiment, ExperimentResult};
