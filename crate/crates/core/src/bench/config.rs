//! TOML experiment configuration.
//!
//! ```toml
//! name = "kl-stars"
//! seed = 1
//! thresholds = [1e-4, 1e-6, 1e-8]
//! max_iters = 5000
//!
//! [problem]
//! kind = "kl-deblur"
//! n = 64
//! phantom = "stars"
//! psf = { kind = "gaussian", sigma = 1.3 }
//! noise = { kind = "poisson" }
//! background = 100.0
//!
//! [[solver]]
//! name = "sgp-ritz"
//! step = "ritz"
//! scaling = "split"
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::data::{NoiseSpec, Phantom};
use crate::feasible::ClampBounds;
use crate::linesearch::LinesearchConfig;
use crate::qp::Spectrum;
use crate::solvers::{ChambolleOptions, GammaSource, StepRule};
use crate::steplength::{AbbMin1Config, StepBounds};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    /// Data seed; QP instance `i` uses `seed + i`.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Output directory; the CLI's `--out` takes precedence.
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Tested from the loosest down; stored in decreasing order.
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<f64>,
    /// Metric the thresholds apply to. Defaults to RRE against the known
    /// solution for QPs and to the objective gap otherwise.
    #[serde(default)]
    pub metric: Option<Metric>,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    /// Stop each run once every threshold is passed.
    #[serde(default = "default_true")]
    pub stop_when_passed: bool,
    pub problem: ProblemSpec,
    #[serde(default)]
    pub reference: ReferenceSpec,
    #[serde(rename = "solver")]
    pub solvers: Vec<SolverSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Rre,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Qp,
    LsDeblur,
    KlDeblur,
    KlHs,
    Rof,
}

impl ProblemKind {
    pub fn is_imaging(self) -> bool {
        !matches!(self, ProblemKind::Qp)
    }
}

/// Point-spread function source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PsfSpec {
    Gaussian { sigma: f64 },
    Delta,
    /// Plain-text matrix file, normalized to unit sum after reading.
    File { path: PathBuf },
}

/// Starting point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartPoint {
    /// Constant image at the mean of `y - b` (floored at 1e-3). The default
    /// for deblurring problems.
    DataMean,
    /// All ones; the default for QPs.
    Ones,
    /// All zeros; the default for the ROF dual.
    Zeros,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// QP dimension, or image side length.
    pub n: usize,
    #[serde(default)]
    pub spectrum: Option<Spectrum>,
    #[serde(default)]
    pub n_active: Option<usize>,
    /// Number of QP instances, seeded `seed, seed + 1, ...`.
    #[serde(default = "default_one")]
    pub instances: usize,
    /// Directory written by `gen-qp`; replaces generation.
    #[serde(default)]
    pub qp_dir: Option<PathBuf>,
    #[serde(default)]
    pub phantom: Option<Phantom>,
    /// Ground-truth image file; replaces `phantom`.
    #[serde(default)]
    pub image: Option<PathBuf>,
    /// Measured data file; replaces synthesis. RRE needs a truth as well.
    #[serde(default)]
    pub data: Option<PathBuf>,
    #[serde(default)]
    pub psf: Option<PsfSpec>,
    #[serde(default)]
    pub noise: Option<NoiseSpec>,
    #[serde(default)]
    pub background: f64,
    /// Regularization weight: `J0 + beta J_HS` for kl-hs, the ROF parameter for rof.
    #[serde(default)]
    pub beta: Option<f64>,
    /// HS smoothing.
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub x0: Option<StartPoint>,
}

/// Long designated run that supplies the reference optimum for gap metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    #[serde(default = "default_ref_iters")]
    pub max_iters: usize,
    /// Stop when the objective decreased by at most `tol |f|` over `window` iterations.
    #[serde(default = "default_ref_window")]
    pub window: usize,
    #[serde(default = "default_ref_tol")]
    pub tol: f64,
    /// Cache directory; defaults to `<out>/cache`.
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    /// Use this value and skip the run.
    #[serde(default)]
    pub f_star: Option<f64>,
}

impl Default for ReferenceSpec {
    fn default() -> Self {
        Self {
            max_iters: default_ref_iters(),
            window: default_ref_window(),
            tol: default_ref_tol(),
            cache_dir: None,
            f_star: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Scaled gradient projection; GP when the scaling is the identity.
    Sgp,
    GpExtra,
    Isra,
    Rl,
    Chambolle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Constant,
    Bb1,
    Bb2,
    Abbmin1,
    Ritz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingKind {
    Identity,
    /// `1 / diag(A)` of a QP.
    InverseDiagonal,
    ColemanLi,
    Iterate,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaKind {
    Steplength,
    Effective,
}

/// One `[[solver]]` table. Fields that do not apply to `method` are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    /// Label in reports and trace file names; must be unique.
    pub name: String,
    #[serde(default = "default_method")]
    pub method: Method,
    #[serde(default = "default_step")]
    pub step: StepKind,
    /// Sweep length of the Ritz rule.
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_scaling")]
    pub scaling: ScalingKind,
    /// Linesearch memory `M`; 1 is monotone.
    #[serde(default = "default_one")]
    pub memory: usize,
    /// Take full steps `lambda = 1` without a linesearch.
    #[serde(default)]
    pub no_linesearch: bool,
    /// Defaults to `1 / max_i A_ii` for QPs and 1 otherwise.
    #[serde(default)]
    pub alpha0: Option<f64>,
    #[serde(default = "default_alpha_min")]
    pub alpha_min: f64,
    #[serde(default = "default_alpha_max")]
    pub alpha_max: f64,
    /// Scaling-matrix bounds `[l1, l2]`.
    #[serde(default = "default_l1")]
    pub l1: f64,
    #[serde(default = "default_l2")]
    pub l2: f64,
    /// Leading BB2 steps of ABBmin1; defaults to 20 for imaging and 0 for QPs.
    #[serde(default)]
    pub bb2_warmup: Option<usize>,
    #[serde(default = "default_tau0")]
    pub abb_tau0: f64,
    #[serde(default = "default_gamma")]
    pub gamma: GammaKind,
    /// Constant steplength, or Chambolle's `tau`.
    #[serde(default)]
    pub tau: Option<f64>,
    /// Chambolle's printed update that divides by the old pair norm.
    #[serde(default)]
    pub literal: bool,
}

fn default_seed() -> u64 {
    1
}
fn default_thresholds() -> Vec<f64> {
    vec![1e-4, 1e-6, 1e-8]
}
fn default_max_iters() -> usize {
    5000
}
fn default_true() -> bool {
    true
}
fn default_one() -> usize {
    1
}
fn default_ref_iters() -> usize {
    100_000
}
fn default_ref_window() -> usize {
    100
}
fn default_ref_tol() -> f64 {
    1e-14
}
fn default_method() -> Method {
    Method::Sgp
}
fn default_step() -> StepKind {
    StepKind::Ritz
}
fn default_m() -> usize {
    3
}
fn default_scaling() -> ScalingKind {
    ScalingKind::Identity
}
fn default_alpha_min() -> f64 {
    StepBounds::default().alpha_min
}
fn default_alpha_max() -> f64 {
    StepBounds::default().alpha_max
}
fn default_l1() -> f64 {
    ClampBounds::default().l1
}
fn default_l2() -> f64 {
    ClampBounds::default().l2
}
fn default_tau0() -> f64 {
    AbbMin1Config::default().tau0
}
fn default_gamma() -> GammaKind {
    GammaKind::Effective
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        Ok(cfg)
    }

    /// Reads, resolves relative paths against the file's directory and validates.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Parse { path: path.display().to_string(), msg },
            other => other,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_paths(base);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| invalid(e.to_string()))
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(path) = p {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        };
        fix(&mut self.out);
        fix(&mut self.problem.qp_dir);
        fix(&mut self.problem.image);
        fix(&mut self.problem.data);
        fix(&mut self.reference.cache_dir);
        if let Some(PsfSpec::File { path }) = &mut self.problem.psf {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
    }

    /// Metric in effect for this problem.
    pub fn metric(&self) -> Metric {
        self.metric.unwrap_or(if self.problem.kind == ProblemKind::Qp { Metric::Rre } else { Metric::Gap })
    }

    /// Sorts thresholds into decreasing order and checks every documented range.
    pub fn validate(&mut self) -> Result<()> {
        if self.thresholds.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(invalid("thresholds must be positive and finite"));
        }
        self.thresholds.sort_by(|a, b| b.total_cmp(a));
        self.thresholds.dedup();
        if self.max_iters == 0 {
            return Err(invalid("max_iters must be positive"));
        }
        if self.solvers.is_empty() {
            return Err(invalid("at least one [[solver]] table is required"));
        }
        for (i, s) in self.solvers.iter().enumerate() {
            if self.solvers[..i].iter().any(|o| o.name == s.name) {
                return Err(invalid(format!("duplicate solver name `{}`", s.name)));
            }
            if s.name.is_empty() || s.name.contains(|c: char| c == ',' || c == '/' || c.is_whitespace()) {
                return Err(invalid(format!("solver name `{}` must be non-empty without commas, slashes or spaces", s.name)));
            }
            s.validate(self.problem.kind)?;
        }
        if self.reference.window == 0 || self.reference.max_iters == 0 {
            return Err(invalid("reference window and max_iters must be positive"));
        }
        self.problem.validate()
    }

    /// Keeps only the solvers named in `names`, in config order.
    pub fn select_solvers(&mut self, names: &[String]) -> Result<()> {
        if let Some(missing) = names.iter().find(|n| !self.solvers.iter().any(|s| &s.name == *n)) {
            return Err(invalid(format!("no solver named `{missing}` in the config")));
        }
        self.solvers.retain(|s| names.contains(&s.name));
        Ok(())
    }
}

impl ProblemSpec {
    fn validate(&self) -> Result<()> {
        let p = self;
        if p.n == 0 {
            return Err(invalid("problem.n must be positive"));
        }
        for path in [&p.qp_dir, &p.image, &p.data].into_iter().flatten() {
            if !path.exists() {
                return Err(invalid(format!("referenced path {} does not exist", path.display())));
            }
        }
        if let Some(PsfSpec::File { path }) = &p.psf {
            if !path.exists() {
                return Err(invalid(format!("referenced PSF {} does not exist", path.display())));
            }
        }
        if let Some(PsfSpec::Gaussian { sigma }) = p.psf {
            if !(sigma > 0.0) {
                return Err(invalid("psf sigma must be positive"));
            }
        }
        if !(p.background >= 0.0 && p.background.is_finite()) {
            return Err(invalid("background must be a finite value >= 0"));
        }
        match p.kind {
            ProblemKind::Qp => {
                let na = p.n_active.unwrap_or(8);
                if na > p.n {
                    return Err(invalid(format!("n_active = {na} exceeds n = {}", p.n)));
                }
                if p.instances == 0 {
                    return Err(invalid("instances must be positive"));
                }
                if p.qp_dir.is_some() && p.instances != 1 {
                    return Err(invalid("qp_dir holds a single instance; set instances = 1"));
                }
            }
            _ => {
                if p.image.is_none() && p.phantom.is_none() && p.data.is_none() {
                    return Err(invalid("imaging problems need `phantom`, `image` or `data`"));
                }
                if p.data.is_none() && p.n < 8 {
                    return Err(invalid("synthetic images need n >= 8"));
                }
            }
        }
        match (p.kind, p.x0()) {
            (ProblemKind::Rof, StartPoint::Zeros) => {}
            (ProblemKind::Rof, _) => return Err(invalid("the ROF dual starts from x0 = \"zeros\"")),
            (ProblemKind::Qp, StartPoint::DataMean) => return Err(invalid("x0 = \"data-mean\" needs an imaging problem")),
            _ => {}
        }
        match p.kind {
            ProblemKind::KlHs => {
                if !(p.beta.unwrap_or(0.0045) >= 0.0) || !(p.delta.unwrap_or(0.1) > 0.0) {
                    return Err(invalid("kl-hs needs beta >= 0 and delta > 0"));
                }
            }
            ProblemKind::Rof => {
                if !(p.beta.unwrap_or(20.0) > 0.0) {
                    return Err(invalid("rof needs beta > 0"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Spectrum {
        self.spectrum.clone().unwrap_or(Spectrum::Geometric)
    }

    pub fn n_active(&self) -> usize {
        self.n_active.unwrap_or(8)
    }

    /// Regularization weight with the documented defaults (0.0045 for kl-hs, 20 for rof).
    pub fn beta(&self) -> f64 {
        self.beta.unwrap_or(if self.kind == ProblemKind::Rof { 20.0 } else { 0.0045 })
    }

    pub fn delta(&self) -> f64 {
        self.delta.unwrap_or(0.1)
    }

    /// Noise model with the defaults Gaussian variance 1 (ls-deblur, rof) and Poisson (kl).
    pub fn noise(&self) -> NoiseSpec {
        self.noise.unwrap_or(match self.kind {
            ProblemKind::KlDeblur | ProblemKind::KlHs => NoiseSpec::Poisson,
            _ => NoiseSpec::Gaussian { variance: 1.0 },
        })
    }

    /// PSF source; denoising ignores it and uses the identity.
    pub fn psf(&self) -> PsfSpec {
        if self.kind == ProblemKind::Rof {
            return PsfSpec::Delta;
        }
        self.psf.clone().unwrap_or(PsfSpec::Gaussian { sigma: 1.3 })
    }

    pub fn x0(&self) -> StartPoint {
        self.x0.unwrap_or(match self.kind {
            ProblemKind::Qp => StartPoint::Ones,
            ProblemKind::Rof => StartPoint::Zeros,
            _ => StartPoint::DataMean,
        })
    }
}

impl SolverSpec {
    /// An SGP solver with every option at its default.
    pub fn sgp(name: &str, step: StepKind) -> Self {
        Self {
            name: name.into(),
            method: Method::Sgp,
            step,
            m: default_m(),
            scaling: default_scaling(),
            memory: 1,
            no_linesearch: false,
            alpha0: None,
            alpha_min: default_alpha_min(),
            alpha_max: default_alpha_max(),
            l1: default_l1(),
            l2: default_l2(),
            bb2_warmup: None,
            abb_tau0: default_tau0(),
            gamma: default_gamma(),
            tau: None,
            literal: false,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_scaling(mut self, scaling: ScalingKind) -> Self {
        self.scaling = scaling;
        self
    }

    fn validate(&self, kind: ProblemKind) -> Result<()> {
        let name = &self.name;
        match (self.method, kind) {
            (Method::Isra, ProblemKind::LsDeblur) | (Method::Rl, ProblemKind::KlDeblur) => {}
            (Method::Isra, _) => return Err(invalid(format!("{name}: isra needs an ls-deblur problem"))),
            (Method::Rl, _) => return Err(invalid(format!("{name}: rl needs a kl-deblur problem"))),
            (Method::Chambolle, ProblemKind::Rof) => {}
            (Method::Chambolle, _) => return Err(invalid(format!("{name}: chambolle needs a rof problem"))),
            (Method::GpExtra, ProblemKind::Qp | ProblemKind::LsDeblur) => {}
            (Method::GpExtra, _) => {
                return Err(invalid(format!("{name}: gp-extra needs a Lipschitz gradient (qp or ls-deblur)")))
            }
            (Method::Sgp, _) => {}
        }
        if self.method == Method::Sgp {
            if self.step == StepKind::Ritz && self.m == 0 {
                return Err(invalid(format!("{name}: m must be positive")));
            }
            if self.step == StepKind::Constant && !self.tau.is_some_and(|t| t > 0.0) {
                return Err(invalid(format!("{name}: a constant step needs tau > 0")));
            }
            if self.memory == 0 {
                return Err(invalid(format!("{name}: memory must be >= 1")));
            }
            StepBounds::new(self.alpha_min, self.alpha_max).map_err(|e| invalid(format!("{name}: {e}")))?;
            ClampBounds::new(self.l1, self.l2).map_err(|e| invalid(format!("{name}: {e}")))?;
            let split_ok = matches!(kind, ProblemKind::LsDeblur | ProblemKind::KlDeblur | ProblemKind::KlHs);
            match self.scaling {
                ScalingKind::Split if !split_ok => {
                    return Err(invalid(format!("{name}: split scaling needs a deblurring problem")))
                }
                ScalingKind::InverseDiagonal if kind != ProblemKind::Qp => {
                    return Err(invalid(format!("{name}: inverse-diagonal scaling needs a qp problem")))
                }
                s if kind == ProblemKind::Rof && s != ScalingKind::Identity => {
                    return Err(invalid(format!("{name}: the ROF dual only supports identity scaling")))
                }
                _ => {}
            }
            if let Some(a0) = self.alpha0 {
                if !(a0 > 0.0) {
                    return Err(invalid(format!("{name}: alpha0 must be positive")));
                }
            }
        }
        if self.method == Method::Chambolle {
            ChambolleOptions::new(self.tau.unwrap_or(0.24)).map_err(|e| invalid(format!("{name}: {e}")))?;
        }
        Ok(())
    }

    pub fn step_rule(&self, imaging: bool) -> StepRule {
        match self.step {
            StepKind::Constant => StepRule::Constant(self.tau.unwrap_or(1.0)),
            StepKind::Bb1 => StepRule::Bb1,
            StepKind::Bb2 => StepRule::Bb2,
            StepKind::Abbmin1 => StepRule::AbbMin1(AbbMin1Config {
                tau0: self.abb_tau0,
                bb2_warmup: self.bb2_warmup.unwrap_or(if imaging { 20 } else { 0 }),
                ..AbbMin1Config::default()
            }),
            StepKind::Ritz => StepRule::Ritz { m: self.m },
        }
    }

    pub fn linesearch(&self) -> Option<LinesearchConfig> {
        if self.no_linesearch {
            None
        } else if self.memory <= 1 {
            Some(LinesearchConfig::monotone())
        } else {
            Some(LinesearchConfig::nonmonotone(self.memory))
        }
    }

    pub fn gamma_source(&self) -> GammaSource {
        match self.gamma {
            GammaKind::Steplength => GammaSource::Steplength,
            GammaKind::Effective => GammaSource::Effective,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
name = "sample"
seed = 3
thresholds = [1e-8, 1e-4, 1e-6]

[problem]
kind = "kl-hs"
n = 16
phantom = "blocks"

[[solver]]
name = "ritz"
scaling = "split"

[[solver]]
name = "abb"
step = "abbmin1"
scaling = "split"
"#;

    #[test]
    fn parses_with_defaults() {
        let mut cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.thresholds, vec![1e-4, 1e-6, 1e-8]);
        assert_eq!(cfg.metric(), Metric::Gap);
        assert_eq!(cfg.problem.beta(), 0.0045);
        assert_eq!(cfg.problem.delta(), 0.1);
        assert_eq!(cfg.problem.noise(), NoiseSpec::Poisson);
        assert_eq!(cfg.solvers[0].step_rule(true), StepRule::Ritz { m: 3 });
        match cfg.solvers[1].step_rule(true) {
            StepRule::AbbMin1(c) => assert_eq!(c.bb2_warmup, 20),
            other => panic!("{other:?}"),
        }
        assert_eq!(cfg.reference.max_iters, 100_000);
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        let again = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = |edit: &dyn Fn(&mut ExperimentConfig)| {
            let mut cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
            edit(&mut cfg);
            cfg.validate().is_err()
        };
        assert!(bad(&|c| c.solvers[1].name = "ritz".into()));
        assert!(bad(&|c| c.thresholds = vec![0.0]));
        assert!(bad(&|c| c.solvers[0].method = Method::Chambolle));
        assert!(bad(&|c| c.solvers[0].scaling = ScalingKind::InverseDiagonal));
        assert!(bad(&|c| c.problem.image = Some("/no/such/file.txt".into())));
        assert!(bad(&|c| c.problem.phantom = None));
        assert!(bad(&|c| c.solvers.clear()));
        assert!(ExperimentConfig::from_toml("name = 1").is_err());
        assert!(ExperimentConfig::from_toml(&format!("{SAMPLE}\nbogus = 1")).is_err());
    }

    #[test]
    fn solver_selection() {
        let mut cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        assert!(cfg.select_solvers(&["nope".into()]).is_err());
        cfg.select_solvers(&["abb".into()]).unwrap();
        assert_eq!(cfg.solvers.len(), 1);
        assert_eq!(cfg.solvers[0].name, "abb");
    }
}
