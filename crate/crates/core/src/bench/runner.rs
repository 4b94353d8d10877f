//! Experiment execution: problem construction, solver runs, the cached
//! reference optimum and the CSV reports.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{
    ExperimentConfig, Method, Metric, ProblemKind, PsfSpec, ScalingKind, SolverSpec, StartPoint,
};
use super::data::synthesize_data;
use crate::feasible::{ClampBounds, DualField, FeasibleSet, ScalingRule};
use crate::image_ops::matfile::{read_image, read_psf, write_image};
use crate::image_ops::{BlurOperator, ImageGrid, PsfKernel};
use crate::objectives::{Hypersurface, KullbackLeibler, LeastSquares, Objective, Regularized, RofDual};
use crate::qp::{generate_qp, QpInstance, QpObjective};
use crate::solvers::{
    chambolle_run, gp_extra_run, isra_run, rl_run, sgp_run, ChambolleOptions, SgpOptions, SolverRun, StepRule,
    StopRule, Termination,
};
use crate::steplength::StepBounds;
use crate::{Error, Result};

/// An imaging problem after data synthesis or loading.
#[derive(Debug, Clone)]
pub struct ImagingProblem {
    pub kind: ProblemKind,
    pub truth: Option<ImageGrid>,
    pub data: ImageGrid,
    pub psf: PsfKernel,
    pub background: f64,
    pub beta: f64,
    pub delta: f64,
    pub x0: StartPoint,
}

/// Objective of an imaging problem, concrete so that ISRA, RL and Chambolle
/// can take their specific types.
#[derive(Debug)]
pub enum ImagingObjective {
    Ls(LeastSquares),
    Kl(KullbackLeibler),
    KlHs(Regularized<KullbackLeibler>),
    Rof(RofDual),
}

impl ImagingObjective {
    pub fn as_dyn(&self) -> &dyn Objective {
        match self {
            ImagingObjective::Ls(o) => o,
            ImagingObjective::Kl(o) => o,
            ImagingObjective::KlHs(o) => o,
            ImagingObjective::Rof(o) => o,
        }
    }
}

impl ImagingProblem {
    pub fn n(&self) -> usize {
        self.data.n()
    }

    pub fn objective(&self) -> Result<ImagingObjective> {
        let y = self.data.values().to_vec();
        let op = || BlurOperator::new(&self.psf);
        Ok(match self.kind {
            ProblemKind::LsDeblur => {
                ImagingObjective::Ls(LeastSquares::with_scalar_background(op(), y, self.background)?)
            }
            ProblemKind::KlDeblur => {
                ImagingObjective::Kl(KullbackLeibler::with_scalar_background(op(), y, self.background)?)
            }
            ProblemKind::KlHs => {
                let kl = KullbackLeibler::with_scalar_background(op(), y, self.background)?;
                ImagingObjective::KlHs(Regularized::new(kl, Hypersurface::new(self.n(), self.delta)?, self.beta)?)
            }
            ProblemKind::Rof => ImagingObjective::Rof(RofDual::new(self.n(), y, self.beta)?),
            ProblemKind::Qp => return Err(Error::Config("not an imaging problem".into())),
        })
    }

    pub fn start(&self) -> Vec<f64> {
        let len = self.n() * self.n();
        match self.x0 {
            StartPoint::Zeros if self.kind == ProblemKind::Rof => vec![0.0; 2 * len],
            StartPoint::Zeros => vec![0.0; len],
            StartPoint::Ones => vec![1.0; len],
            StartPoint::DataMean => {
                let mean = self.data.values().iter().sum::<f64>() / len as f64 - self.background;
                vec![mean.max(1e-3); len]
            }
        }
    }

    /// Image to report for a final iterate: the primal image for the ROF dual.
    pub fn image_of(&self, x: &[f64]) -> Result<ImageGrid> {
        match self.objective()? {
            ImagingObjective::Rof(rof) => ImageGrid::new(self.n(), rof.primal(x)?),
            _ => ImageGrid::new(self.n(), x.to_vec()),
        }
    }
}

/// A built problem: QP instances or one imaging problem.
#[derive(Debug, Clone)]
pub enum Problem {
    Qp(Vec<QpInstance>),
    Imaging(ImagingProblem),
}

/// Reads or renders the truth, builds the PSF and synthesizes or reads the data.
pub fn build_problem(cfg: &ExperimentConfig) -> Result<Problem> {
    let p = &cfg.problem;
    if p.kind == ProblemKind::Qp {
        let instances = match &p.qp_dir {
            Some(dir) => vec![QpInstance::load(dir)?],
            None => (0..p.instances as u64)
                .map(|i| generate_qp(p.n, &p.spectrum(), p.n_active(), cfg.seed + i))
                .collect::<Result<_>>()?,
        };
        return Ok(Problem::Qp(instances));
    }
    let truth = match (&p.image, p.phantom) {
        (Some(path), _) => Some(read_image(path)?),
        (None, Some(ph)) => Some(ph.render(p.n)?),
        (None, None) => None,
    };
    let n = truth.as_ref().map(|t| t.n()).unwrap_or(p.n);
    let psf = match p.psf() {
        PsfSpec::Gaussian { sigma } => PsfKernel::gaussian(n, sigma)?,
        PsfSpec::Delta => PsfKernel::delta(n),
        PsfSpec::File { path } => read_psf(&path)?.normalized()?,
    };
    let data = match (&p.data, &truth) {
        (Some(path), _) => read_image(path)?,
        (None, Some(t)) => synthesize_data(t, &psf, &p.noise(), p.background, cfg.seed)?,
        (None, None) => unreachable!("validated: imaging problems have a truth or data"),
    };
    if psf.n() != data.n() {
        return Err(Error::SizeMismatch { expected: data.n(), got: psf.n() });
    }
    if let Some(t) = &truth {
        if t.n() != data.n() {
            return Err(Error::SizeMismatch { expected: data.n(), got: t.n() });
        }
    }
    Ok(Problem::Imaging(ImagingProblem {
        kind: p.kind,
        truth,
        data,
        psf,
        background: p.background,
        beta: p.beta(),
        delta: p.delta(),
        x0: p.x0(),
    }))
}

/// SGP options described by `spec`; `qp` supplies the diagonal for the
/// inverse-diagonal scaling and the default `alpha0 = 1 / max_i A_ii`.
pub fn sgp_options(spec: &SolverSpec, kind: ProblemKind, qp: Option<&QpObjective>) -> Result<SgpOptions> {
    let diag = qp.map(|o| o.diagonal());
    let scaling = match spec.scaling {
        ScalingKind::Identity => ScalingRule::Identity,
        ScalingKind::InverseDiagonal => ScalingRule::InverseDiagonal(
            diag.clone().ok_or_else(|| Error::Config("inverse-diagonal scaling needs a QP".into()))?,
        ),
        ScalingKind::ColemanLi => ScalingRule::ColemanLi,
        ScalingKind::Iterate => ScalingRule::Iterate,
        ScalingKind::Split => ScalingRule::Split,
    };
    let alpha0 = spec.alpha0.unwrap_or_else(|| match &diag {
        Some(d) => 1.0 / d.iter().cloned().fold(0.0, f64::max),
        None => 1.0,
    });
    Ok(SgpOptions {
        scaling,
        clamp: ClampBounds::new(spec.l1, spec.l2)?,
        step: spec.step_rule(kind.is_imaging()),
        bounds: StepBounds::new(spec.alpha_min, spec.alpha_max)?,
        alpha0,
        linesearch: spec.linesearch(),
        feasible: if kind == ProblemKind::Rof { FeasibleSet::UnitDiscs } else { FeasibleSet::NonNegative },
        gamma_source: spec.gamma_source(),
        mask_eps: None,
    })
}

fn run_imaging(spec: &SolverSpec, prob: &ImagingProblem, stop: &StopRule) -> Result<SolverRun> {
    let obj = prob.objective()?;
    let x0 = prob.start();
    match (spec.method, &obj) {
        (Method::Sgp, _) => sgp_run(obj.as_dyn(), &x0, &sgp_options(spec, prob.kind, None)?, stop),
        (Method::GpExtra, _) => gp_extra_run(obj.as_dyn(), &x0, stop),
        (Method::Isra, ImagingObjective::Ls(ls)) => isra_run(ls, &x0, stop),
        (Method::Rl, ImagingObjective::Kl(kl)) => rl_run(kl, &x0, stop),
        (Method::Chambolle, ImagingObjective::Rof(rof)) => {
            let opts = ChambolleOptions { literal: spec.literal, ..ChambolleOptions::new(spec.tau.unwrap_or(0.24))? };
            chambolle_run(rof, &DualField::new(prob.n(), x0)?, &opts, stop)
        }
        (m, _) => Err(Error::Config(format!("method {m:?} does not apply to {:?}", prob.kind))),
    }
}

fn run_qp(spec: &SolverSpec, inst: &QpInstance, x0: &[f64], stop: &StopRule) -> Result<SolverRun> {
    let obj = inst.objective();
    match spec.method {
        Method::Sgp => sgp_run(&obj, x0, &sgp_options(spec, ProblemKind::Qp, Some(&obj))?, stop),
        Method::GpExtra => gp_extra_run(&obj, x0, stop),
        m => Err(Error::Config(format!("method {m:?} does not apply to QPs"))),
    }
}

/// Reference optimum used by gap metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub f_star: f64,
    /// Iterations of the designated run; 0 when the value was given or exact.
    pub iterations: usize,
    pub termination: String,
    pub key: String,
}

/// SHA-256 over everything the reference run depends on.
fn reference_key(prob: &ImagingProblem, cfg: &ExperimentConfig) -> String {
    let mut h = Sha256::new();
    h.update(format!("sgp-ritz reference v{}\n", env!("CARGO_PKG_VERSION")));
    h.update(format!("{:?} {} {:?}\n", prob.kind, prob.n(), prob.x0));
    for v in [prob.background, prob.beta, prob.delta] {
        h.update(v.to_le_bytes());
    }
    for v in prob.data.values().iter().chain(prob.psf.weights()) {
        h.update(v.to_le_bytes());
    }
    let (ci, cj) = prob.psf.center();
    h.update(format!("{ci} {cj} {} {} {:e}", cfg.reference.max_iters, cfg.reference.window, cfg.reference.tol));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// The designated long run: SGP Ritz (`m = 3`, monotone) with split
/// scaling for deblurring and plain GP on the unit discs for the ROF dual,
/// stopped at `max_iters` or when the objective stagnates.
pub fn reference_run(prob: &ImagingProblem, cfg: &ExperimentConfig) -> Result<SolverRun> {
    let mut spec = SolverSpec::sgp("reference", super::config::StepKind::Ritz);
    if prob.kind != ProblemKind::Rof {
        spec.scaling = ScalingKind::Split;
    }
    let stop = StopRule::iterations(cfg.reference.max_iters).with_stagnation(cfg.reference.window, cfg.reference.tol);
    let run = run_imaging(&spec, prob, &stop)?;
    if let Termination::Failed(msg) = &run.termination {
        return Err(Error::Config(format!("reference run failed: {msg}")));
    }
    Ok(run)
}

/// Reference optimum from the config, the cache, or a fresh designated run
/// (written to the cache).
pub fn reference_optimum(prob: &ImagingProblem, cfg: &ExperimentConfig, cache_dir: &Path) -> Result<Reference> {
    let key = reference_key(prob, cfg);
    if let Some(f_star) = cfg.reference.f_star {
        return Ok(Reference { f_star, iterations: 0, termination: "given".into(), key });
    }
    let path = cache_dir.join(format!("{key}.toml"));
    if let Ok(text) = fs::read_to_string(&path) {
        match toml::from_str::<Reference>(&text) {
            Ok(r) if r.key == key => {
                log::info!("reference optimum {:e} from cache {}", r.f_star, path.display());
                return Ok(r);
            }
            _ => log::warn!("ignoring unreadable reference cache {}", path.display()),
        }
    }
    let t = Instant::now();
    let run = reference_run(prob, cfg)?;
    let f_star = run.history.iter().map(|r| r.f).fold(f64::INFINITY, f64::min);
    log::info!(
        "reference run: {} iterations, {}, f* = {f_star:e} ({:.1} s)",
        run.iterations(),
        run.termination,
        t.elapsed().as_secs_f64()
    );
    let r = Reference { f_star, iterations: run.iterations(), termination: run.termination.to_string(), key };
    fs::create_dir_all(cache_dir)?;
    fs::write(&path, toml::to_string(&r).map_err(|e| Error::Config(e.to_string()))?)?;
    Ok(r)
}

/// Outcome of one solver on one instance. `run` is `None` when the solver
/// could not start; `error` then says why.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub solver: String,
    pub seed: u64,
    pub run: Option<SolverRun>,
    pub error: Option<String>,
    pub wall_s: f64,
}

impl RunOutcome {
    pub fn termination(&self) -> String {
        match (&self.run, &self.error) {
            (Some(r), _) => r.termination.to_string(),
            (None, Some(e)) => format!("failed: {e}"),
            (None, None) => "failed".into(),
        }
    }

    pub fn passage(&self, t: f64) -> Option<usize> {
        self.run.as_ref().and_then(|r| r.first_passage(t))
    }
}

/// Everything an experiment produced, before it is written out.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub problem: Problem,
    pub reference: Option<Reference>,
    /// Instance-major, solvers in config order.
    pub outcomes: Vec<RunOutcome>,
}

/// Runs every solver on every instance. Runs are independent and execute in
/// parallel; the result order is fixed. `cache_dir` holds reference optima.
pub fn execute(cfg: &ExperimentConfig, cache_dir: &Path) -> Result<ExperimentResult> {
    let mut cfg = cfg.clone();
    cfg.validate()?;
    let problem = build_problem(&cfg)?;
    let metric = cfg.metric();
    let reference = match (&problem, metric) {
        (Problem::Imaging(p), Metric::Gap) => Some(reference_optimum(p, &cfg, cache_dir)?),
        _ => None,
    };
    let thresholds = cfg.thresholds.clone();
    let finish = |rule: StopRule| if cfg.stop_when_passed { rule } else { rule.run_to_max() };
    let timed = |solver: &SolverSpec, seed: u64, f: &dyn Fn() -> Result<SolverRun>| {
        let t = Instant::now();
        let res = f();
        let wall_s = t.elapsed().as_secs_f64();
        match res {
            Ok(run) => RunOutcome { solver: solver.name.clone(), seed, run: Some(run), error: None, wall_s },
            Err(e) => {
                log::warn!("solver {} failed: {e}", solver.name);
                RunOutcome { solver: solver.name.clone(), seed, run: None, error: Some(e.to_string()), wall_s }
            }
        }
    };
    let outcomes: Vec<RunOutcome> = match &problem {
        Problem::Qp(instances) => {
            let tasks: Vec<(&QpInstance, &SolverSpec)> =
                instances.iter().flat_map(|i| cfg.solvers.iter().map(move |s| (i, s))).collect();
            tasks
                .par_iter()
                .map(|(inst, spec)| {
                    let x0 = match cfg.problem.x0() {
                        StartPoint::Zeros => vec![0.0; inst.n()],
                        _ => vec![1.0; inst.n()],
                    };
                    let stop = match metric {
                        Metric::Rre => StopRule::rre(inst.x_star.clone(), thresholds.clone(), cfg.max_iters),
                        Metric::Gap => {
                            let f_star = inst.objective().value(&inst.x_star).unwrap_or(f64::NAN);
                            StopRule::gap(f_star, thresholds.clone(), cfg.max_iters).with_truth(inst.x_star.clone())
                        }
                    };
                    let stop = finish(stop);
                    timed(spec, inst.seed, &|| run_qp(spec, inst, &x0, &stop))
                })
                .collect()
        }
        Problem::Imaging(prob) => {
            let truth = prob.truth.as_ref().map(|t| t.values().to_vec());
            let stop = match metric {
                Metric::Gap => {
                    let r = reference.as_ref().expect("gap metric has a reference");
                    let rule = StopRule::gap(r.f_star, thresholds.clone(), cfg.max_iters);
                    match (&truth, prob.kind) {
                        (Some(t), k) if k != ProblemKind::Rof => rule.with_truth(t.clone()),
                        _ => rule,
                    }
                }
                Metric::Rre => {
                    let t = truth
                        .clone()
                        .filter(|_| prob.kind != ProblemKind::Rof)
                        .ok_or_else(|| Error::Config("the rre metric needs a ground-truth image on a primal problem".into()))?;
                    StopRule::rre(t, thresholds.clone(), cfg.max_iters)
                }
            };
            let stop = finish(stop);
            cfg.solvers
                .par_iter()
                .map(|spec| timed(spec, cfg.seed, &|| run_imaging(spec, prob, &stop)))
                .collect()
        }
    };
    Ok(ExperimentResult { config: cfg, problem, reference, outcomes })
}

fn fmt_f(v: f64) -> String {
    format!("{v:e}")
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Median with missing values ranked last; `None` when the median is missing.
pub fn median_passage(values: &[Option<usize>]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v: Vec<f64> = values.iter().map(|x| x.map(|k| k as f64).unwrap_or(f64::INFINITY)).collect();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let m = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 };
    m.is_finite().then_some(m)
}

fn fmt_median(m: Option<f64>) -> String {
    match m {
        Some(v) if v.fract() == 0.0 => format!("{}", v as u64),
        Some(v) => format!("{v}"),
        None => String::new(),
    }
}

impl ExperimentResult {
    pub fn solver_names(&self) -> Vec<String> {
        self.config.solvers.iter().map(|s| s.name.clone()).collect()
    }

    pub fn outcomes_of<'a>(&'a self, solver: &'a str) -> impl Iterator<Item = &'a RunOutcome> + 'a {
        self.outcomes.iter().filter(move |o| o.solver == solver)
    }

    /// Median first passage of `solver` at `threshold` over the instances.
    pub fn median_passage(&self, solver: &str, threshold: f64) -> Option<f64> {
        let v: Vec<Option<usize>> = self.outcomes_of(solver).map(|o| o.passage(threshold)).collect();
        median_passage(&v)
    }

    fn threshold_header(&self) -> String {
        self.config.thresholds.iter().map(|t| format!(",pass_{t:e}")).collect()
    }

    /// One row per (solver, instance). Contains no timing, so reruns are identical.
    pub fn runs_csv(&self) -> String {
        let mut out = format!("solver,seed,termination,iterations,final_f{},min_rre_iter,min_rre\n", self.threshold_header());
        for o in &self.outcomes {
            let (iters, f, min_rre) = match &o.run {
                Some(r) => (Some(r.iterations()), Some(fmt_f(r.final_value())), r.min_rre()),
                None => (None, None, None),
            };
            let _ = write!(out, "{},{},{},{},{}", o.solver, o.seed, csv_field(&o.termination()), fmt_opt(iters), fmt_opt(f));
            for &t in &self.config.thresholds {
                let _ = write!(out, ",{}", fmt_opt(o.passage(t)));
            }
            let _ = writeln!(out, ",{},{}", fmt_opt(min_rre.map(|m| m.0)), fmt_opt(min_rre.map(|m| fmt_f(m.1))));
        }
        out
    }

    /// One row per solver; passages and RRE columns are medians over instances.
    pub fn summary_csv(&self) -> String {
        let mut out = format!("solver,runs,failed,reached{},min_rre_iter,min_rre\n", self.threshold_header());
        let last = self.config.thresholds.last().copied();
        for name in self.solver_names() {
            let runs: Vec<&RunOutcome> = self.outcomes_of(&name).collect();
            let failed = runs.iter().filter(|o| o.run.as_ref().is_none_or(|r| matches!(r.termination, Termination::Failed(_)))).count();
            let reached = last.map(|t| runs.iter().filter(|o| o.passage(t).is_some()).count()).unwrap_or(0);
            let _ = write!(out, "{name},{},{failed},{reached}", runs.len());
            for &t in &self.config.thresholds {
                let _ = write!(out, ",{}", fmt_median(self.median_passage(&name, t)));
            }
            let mins: Vec<(usize, f64)> = runs.iter().filter_map(|o| o.run.as_ref().and_then(|r| r.min_rre())).collect();
            if mins.is_empty() {
                out.push_str(",,\n");
            } else {
                let it: Vec<Option<usize>> = mins.iter().map(|m| Some(m.0)).collect();
                let mut errs: Vec<f64> = mins.iter().map(|m| m.1).collect();
                errs.sort_by(f64::total_cmp);
                let k = errs.len();
                let med = if k % 2 == 1 { errs[k / 2] } else { (errs[k / 2 - 1] + errs[k / 2]) / 2.0 };
                let _ = writeln!(out, ",{},{}", fmt_median(median_passage(&it)), fmt_f(med));
            }
        }
        out
    }

    /// Wall time per run, kept apart from the deterministic summaries.
    pub fn timings_csv(&self) -> String {
        let mut out = String::from("solver,seed,wall_s\n");
        for o in &self.outcomes {
            let _ = writeln!(out, "{},{},{:.6}", o.solver, o.seed, o.wall_s);
        }
        out
    }

    fn trace_name(&self, o: &RunOutcome) -> String {
        match &self.problem {
            Problem::Qp(inst) if inst.len() > 1 => format!("{}-seed{}.csv", o.solver, o.seed),
            _ => format!("{}.csv", o.solver),
        }
    }

    /// Writes the reports into `out`:
    ///
    /// - `summary.csv`, `runs.csv`: deterministic tables
    /// - `timings.csv`: wall time
    /// - `traces/<solver>[-seed<k>].csv`: per-iteration history
    /// - `config.toml`: the effective configuration
    /// - `reference.toml`: the reference optimum, when a gap metric is used
    /// - `truth.txt`, `data.txt`, `x_<solver>.txt`: images as plain-text matrices
    pub fn write(&self, out: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(out.join("traces"))?;
        let mut written = Vec::new();
        let mut put = |name: &str, text: String| -> Result<()> {
            let path = out.join(name);
            fs::write(&path, text)?;
            written.push(path);
            Ok(())
        };
        put("summary.csv", self.summary_csv())?;
        put("runs.csv", self.runs_csv())?;
        put("timings.csv", self.timings_csv())?;
        put("config.toml", self.config.to_toml()?)?;
        if let Some(r) = &self.reference {
            put("reference.toml", toml::to_string(r).map_err(|e| Error::Config(e.to_string()))?)?;
        }
        for o in &self.outcomes {
            if let Some(run) = &o.run {
                put(&format!("traces/{}", self.trace_name(o)), run.to_csv())?;
            }
        }
        if let Problem::Imaging(prob) = &self.problem {
            if let Some(t) = &prob.truth {
                write_image(&out.join("truth.txt"), t)?;
                written.push(out.join("truth.txt"));
            }
            write_image(&out.join("data.txt"), &prob.data)?;
            written.push(out.join("data.txt"));
            for o in &self.outcomes {
                if let Some(run) = &o.run {
                    let path = out.join(format!("x_{}.txt", o.solver));
                    write_image(&path, &prob.image_of(&run.x)?)?;
                    written.push(path);
                }
            }
        }
        Ok(written)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs the experiment and writes its reports into `out`. The reference
/// cache defaults to `<out>/cache`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentResult> {
    let cache = cfg.reference.cache_dir.clone().unwrap_or_else(|| out.join("cache"));
    let res = execute(cfg, &cache)?;
    res.write(out)?;
    Ok(res)
}

/// Whether every run's first passages are non-decreasing as thresholds tighten.
pub fn passages_monotone(res: &ExperimentResult) -> bool {
    res.outcomes.iter().all(|o| {
        let p: Vec<Option<usize>> = res.config.thresholds.iter().map(|&t| o.passage(t)).collect();
        p.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => a <= b,
            (None, Some(_)) => false,
            _ => true,
        })
    })
}

/// Label of a step rule as used in reports.
pub fn rule_label(rule: &StepRule) -> String {
    rule.name()
}
