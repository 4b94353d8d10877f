//! Iteration drivers and their run histories.

mod chambolle;
mod extra;
mod multiplicative;
mod sgp;
mod stop;

pub use chambolle::{chambolle_run, ChambolleOptions};
pub use extra::{gp_extra_eta, gp_extra_run, gp_extra_theta};
pub use multiplicative::{isra_run, isra_step, rl_run, rl_step};
pub use sgp::{sgp_run, GammaSource, SgpOptions, StepRule};
pub use stop::{compute_gap, compute_rre, Gap, IterRecord, SolverRun, StopRule, Termination, Tracked};
