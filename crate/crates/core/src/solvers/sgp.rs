use super::stop::{projected_gradient_norm, Monitor, SolverRun, StopRule, Termination};
use crate::feasible::{build_scaling, ClampBounds, DiagScaling, FeasibleSet, ScalingRule};
use crate::linesearch::{armijo_search, LinesearchConfig, ObjectiveHistory};
use crate::objectives::{Objective, SplitGradient};
use crate::steplength::{bb1, bb2, scaled_masked, AbbMin1, AbbMin1Config, RitzSweep, StepBounds};
use crate::vecops::{check_len, norm_inf, sub};
use crate::{Error, Result};

/// Steplength rule for [`sgp_run`].
#[derive(Debug, Clone, PartialEq)]
pub enum StepRule {
    Constant(f64),
    Bb1,
    Bb2,
    AbbMin1(AbbMin1Config),
    /// Limited-memory rule with sweeps of length `m`.
    Ritz { m: usize },
}

impl StepRule {
    pub fn name(&self) -> String {
        match self {
            StepRule::Constant(a) => format!("const({a})"),
            StepRule::Bb1 => "BB1".into(),
            StepRule::Bb2 => "BB2".into(),
            StepRule::AbbMin1(_) => "ABBmin1".into(),
            StepRule::Ritz { m } => format!("Ritz(m={m})"),
        }
    }
}

/// Which steplength enters the `Gamma` matrix of the Ritz rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaSource {
    /// `alpha_k` as chosen by the rule.
    Steplength,
    /// `lambda_k alpha_k`, the step actually taken along the gradient. The
    /// gradient recurrence behind the Ritz values holds for this one.
    #[default]
    Effective,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SgpOptions {
    pub scaling: ScalingRule,
    pub clamp: ClampBounds,
    pub step: StepRule,
    pub bounds: StepBounds,
    /// Steplength before a rule has enough history.
    pub alpha0: f64,
    /// `None` takes the full step `lambda = 1`.
    pub linesearch: Option<LinesearchConfig>,
    pub feasible: FeasibleSet,
    pub gamma_source: GammaSource,
    /// Threshold of the disc-set mask; defaults to `1e-8 (1 + ||g||_inf)`.
    pub mask_eps: Option<f64>,
}

impl Default for SgpOptions {
    fn default() -> Self {
        Self {
            scaling: ScalingRule::Identity,
            clamp: ClampBounds::default(),
            step: StepRule::Ritz { m: 3 },
            bounds: StepBounds::default(),
            alpha0: 1.0,
            linesearch: Some(LinesearchConfig::monotone()),
            feasible: FeasibleSet::NonNegative,
            gamma_source: GammaSource::Effective,
            mask_eps: None,
        }
    }
}

enum StepState {
    Constant(f64),
    Bb { second: bool },
    Abb(AbbMin1),
    Ritz(RitzSweep),
}

/// Scaled gradient projection:
/// `x+ = x + lambda (P(x - alpha D g) - x)`, with `D` from `opts.scaling`,
/// `alpha` from `opts.step` and `lambda` from the Armijo linesearch.
///
/// With identity scaling this is plain gradient projection (GP). Errors at
/// the starting point are returned; failures later end the run with
/// [`Termination::Failed`].
pub fn sgp_run<O: Objective + ?Sized>(obj: &O, x0: &[f64], opts: &SgpOptions, stop: &StopRule) -> Result<SolverRun> {
    check_len(obj.dim(), x0.len())?;
    if opts.feasible.violation(x0) > 0.0 {
        return Err(Error::InvalidParameter("starting point is not feasible".into()));
    }
    if opts.feasible == FeasibleSet::UnitDiscs && opts.scaling != ScalingRule::Identity {
        return Err(Error::InvalidParameter("the disc set supports identity scaling only".into()));
    }
    if let Some(cfg) = &opts.linesearch {
        cfg.validate()?;
    }
    let set = opts.feasible;
    let bounds = opts.bounds;
    let mut state = match &opts.step {
        StepRule::Constant(a) => StepState::Constant(bounds.clamp(*a)),
        StepRule::Bb1 => StepState::Bb { second: false },
        StepRule::Bb2 => StepState::Bb { second: true },
        StepRule::AbbMin1(cfg) => StepState::Abb(AbbMin1::new(*cfg)),
        StepRule::Ritz { m } => {
            if *m == 0 {
                return Err(Error::InvalidParameter("Ritz sweep length must be positive".into()));
            }
            StepState::Ritz(RitzSweep::new(*m, opts.alpha0, bounds))
        }
    };

    let mut x = x0.to_vec();
    let needs_split = opts.scaling.needs_split();
    let (mut f, mut g, mut split) = evaluate(obj, &x, needs_split)?;
    let mut history = ObjectiveHistory::new(opts.linesearch.map_or(1, |c| c.memory));
    history.push(f);
    let mut monitor = Monitor::new(stop);
    let pg = |x: &[f64], g: &[f64]| stop.pg_tol.map(|_| projected_gradient_norm(&set, x, g));
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;

    let mut term = monitor.observe(f, &x, None, None, set.violation(&x), pg(&x, &g));
    while term.is_none() {
        let d_k = match build_scaling(&opts.scaling, &x, &g, split.as_ref(), opts.clamp) {
            Ok(d) => d,
            Err(e) => {
                term = Some(Termination::Failed(e.to_string()));
                break;
            }
        };
        let eps = opts.mask_eps.unwrap_or_else(|| 1e-8 * (1.0 + norm_inf(&g)));

        let alpha = match &mut state {
            StepState::Constant(a) => *a,
            StepState::Bb { second } => match &prev {
                None => bounds.clamp(opts.alpha0),
                Some((xp, gp)) => {
                    let (s, z) = (sub(&x, xp), sub(&g, gp));
                    if *second { bb2(&s, &z, &d_k, bounds) } else { bb1(&s, &z, &d_k, bounds) }
                }
            },
            StepState::Abb(abb) => match &prev {
                None => bounds.clamp(opts.alpha0),
                Some((xp, gp)) => bounds.clamp(abb.select(&sub(&x, xp), &sub(&g, gp), &d_k, bounds)),
            },
            StepState::Ritz(sweep) => {
                let mask_alpha = sweep.fallback();
                sweep.next_alpha(|| {
                    let dir = direction(&set, &x, &g, &d_k, mask_alpha);
                    scaled_masked(&g, &d_k, &set.active_mask(&x, &g, mask_alpha, &dir, eps))
                })
            }
        };

        let dir = direction(&set, &x, &g, &d_k, alpha);
        if dir.iter().all(|&v| v == 0.0) {
            term = Some(Termination::Stationary);
            break;
        }
        // the linesearch value is kept: for quadratics it is formed from the
        // exact change along the step and is more accurate than re-evaluation
        let (x_new, lambda, f_ls) = match &opts.linesearch {
            Some(cfg) => match armijo_search(obj, &x, &dir, &g, &history, cfg) {
                Ok(out) if out.limit_reached => {
                    // no sufficient decrease even at the smallest step: rounding
                    // noise dominates, keep the current iterate
                    term = Some(Termination::Stalled);
                    break;
                }
                Ok(out) => (out.x_new, out.lambda, Some(out.f_new)),
                Err(Error::NotDescent(_)) => {
                    // only reachable through rounding at a stationary point
                    term = Some(Termination::Stationary);
                    break;
                }
                Err(e) => {
                    term = Some(Termination::Failed(e.to_string()));
                    break;
                }
            },
            None => (x.iter().zip(&dir).map(|(a, b)| a + b).collect(), 1.0, None),
        };

        if let StepState::Ritz(sweep) = &mut state {
            let mask = set.active_mask(&x, &g, alpha, &dir, eps);
            let recorded = match opts.gamma_source {
                GammaSource::Steplength => alpha,
                GammaSource::Effective => lambda * alpha,
            };
            sweep.push(&g, &d_k, &mask, recorded);
        }

        let (f_new, g_new, split_new) = match evaluate(obj, &x_new, needs_split) {
            Ok(v) => v,
            Err(e) => {
                term = Some(Termination::Failed(e.to_string()));
                break;
            }
        };
        split = split_new;
        let x_old = std::mem::replace(&mut x, x_new);
        let g_old = std::mem::replace(&mut g, g_new);
        f = f_ls.unwrap_or(f_new);
        history.push(f);
        term = monitor.observe(f, &x, Some(&x_old), Some((alpha, lambda)), set.violation(&x), pg(&x, &g));
        prev = Some((x_old, g_old));
    }

    let products = match state {
        StepState::Ritz(sweep) => sweep.products_per_sweep().to_vec(),
        _ => Vec::new(),
    };
    Ok(monitor.finish(x, term.expect("loop exits with a reason"), products))
}

fn evaluate<O: Objective + ?Sized>(
    obj: &O,
    x: &[f64],
    needs_split: bool,
) -> Result<(f64, Vec<f64>, Option<SplitGradient>)> {
    if needs_split {
        let (f, g, s) = obj.value_grad_split(x)?;
        Ok((f, g, Some(s)))
    } else {
        let (f, g) = obj.value_grad(x)?;
        Ok((f, g, None))
    }
}

/// `P(x - alpha D g) - x`.
fn direction(set: &FeasibleSet, x: &[f64], g: &[f64], d: &DiagScaling, alpha: f64) -> Vec<f64> {
    let trial: Vec<f64> = x.iter().zip(g).zip(d.diag()).map(|((xi, gi), di)| xi - alpha * di * gi).collect();
    let proj = set.project(&trial);
    proj.iter().zip(x).map(|(p, xi)| p - xi).collect()
}
