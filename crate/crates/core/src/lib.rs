//! Scaled gradient projection (SGP) methods for non-negatively constrained
//! problems, with a limited-memory steplength rule built from Ritz values of
//! the scaled, masked gradient history.
//!
//! The crate is organized bottom-up:
//!
//! - [`image_ops`]: periodic convolution, discrete gradient/divergence,
//!   PSF handling and the plain-text matrix file format.
//! - [`objectives`]: least squares, Kullback-Leibler, hypersurface
//!   regularization, their composite, and the dual ROF functional, with the
//!   `U - V` gradient splittings used by the scaling matrices.
//! - [`feasible`]: projections (non-negative orthant, unit discs) and the
//!   diagonal scaling-matrix builder.
//! - [`steplength`]: scaled BB1/BB2, ABBmin1 and the Ritz sweep engine.
//! - [`linesearch`]: monotone and nonmonotone Armijo backtracking.
//! - [`solvers`]: SGP/GP, GP with extrapolation, ISRA, Richardson-Lucy and
//!   Chambolle's dual iteration, plus stopping rules and run histories.
//! - [`qp`]: random constrained QPs with a prescribed spectrum and known
//!   solution.
//! - [`bench`]: experiment configuration, data synthesis, metrics, CSV
//!   reports and the command-line front end.
//!
//! A minimal run on a generated QP:
//!
//! ```
//! use sgp_ritz::qp::{generate_qp, Spectrum};
//! use sgp_ritz::solvers::{sgp_run, SgpOptions, StepRule, StopRule};
//!
//! let inst = generate_qp(20, &Spectrum::Geometric, 8, 1).unwrap();
//! let obj = inst.objective();
//! let opts = SgpOptions { step: StepRule::Ritz { m: 3 }, ..SgpOptions::default() };
//! let stop = StopRule::rre(inst.x_star.clone(), vec![1e-4, 1e-6, 1e-8], 5000);
//! let run = sgp_run(&obj, &vec![1.0; 20], &opts, &stop).unwrap();
//! assert!(run.first_passage(1e-8).is_some());
//! ```

pub mod bench;
pub mod error;
pub mod feasible;
pub mod image_ops;
pub mod linesearch;
pub mod objectives;
pub mod qp;
pub mod solvers;
pub mod steplength;
mod vecops;

pub use error::{Error, Result};
