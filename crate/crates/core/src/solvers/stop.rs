use std::fmt::{self, Write as _};
use std::time::Instant;

use crate::vecops::{norm2, norm_inf, sub};

/// Relative reconstruction error `||x - truth|| / ||truth||`.
pub fn compute_rre(x: &[f64], truth: &[f64]) -> crate::Result<f64> {
    crate::vecops::check_len(truth.len(), x.len())?;
    let nt = norm2(truth);
    if nt == 0.0 {
        return Err(crate::Error::InvalidParameter("RRE against a zero truth".into()));
    }
    Ok(norm2(&sub(x, truth)) / nt)
}

/// Objective gap against a reference optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub value: f64,
    /// `f_star <= 0`, so `value` is `f_k - f_star` rather than relative.
    pub absolute: bool,
}

/// `(f_k - f_star) / f_star`, or the absolute difference when `f_star <= 0`.
/// Negative gaps are returned as-is with a warning.
pub fn compute_gap(f_k: f64, f_star: f64) -> Gap {
    let gap = gap_value(f_k, f_star);
    if gap.value < 0.0 {
        log::warn!("objective {f_k:e} is below the reference optimum {f_star:e}");
    }
    gap
}

pub(crate) fn gap_value(f_k: f64, f_star: f64) -> Gap {
    if f_star > 0.0 {
        Gap { value: (f_k - f_star) / f_star, absolute: false }
    } else {
        Gap { value: f_k - f_star, absolute: true }
    }
}

/// Which metric the thresholds are tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tracked {
    Rre,
    Gap,
}

/// Stopping rule. Criteria are checked in the order max iterations, gap,
/// RRE, iterate difference, projected-gradient norm.
#[derive(Debug, Clone)]
pub struct StopRule {
    pub max_iters: usize,
    /// Known solution or ground truth, for the RRE column.
    pub truth: Option<Vec<f64>>,
    /// Reference optimum, for the gap column.
    pub f_star: Option<f64>,
    pub thresholds: Vec<f64>,
    pub tracked: Tracked,
    /// Stop once the tracked metric is below every threshold.
    pub stop_when_passed: bool,
    /// Stop when `||x_k - x_{k-1}|| <= tol * ||x_k||`.
    pub iterate_tol: Option<f64>,
    /// Stop when `||x - P(x - g)||_inf <= tol`.
    pub pg_tol: Option<f64>,
    /// `(window, tol)`: stop when `(f_{k-window} - f_k) <= tol |f_k|`.
    pub stagnation: Option<(usize, f64)>,
}

impl StopRule {
    /// Plain iteration budget.
    pub fn iterations(max_iters: usize) -> Self {
        Self {
            max_iters,
            truth: None,
            f_star: None,
            thresholds: Vec::new(),
            tracked: Tracked::Rre,
            stop_when_passed: false,
            iterate_tol: None,
            pg_tol: None,
            stagnation: None,
        }
    }

    /// Track RRE against `truth` and stop once below every threshold.
    pub fn rre(truth: Vec<f64>, thresholds: Vec<f64>, max_iters: usize) -> Self {
        Self { truth: Some(truth), thresholds, stop_when_passed: true, ..Self::iterations(max_iters) }
    }

    /// Track the objective gap against `f_star` and stop once below every threshold.
    pub fn gap(f_star: f64, thresholds: Vec<f64>, max_iters: usize) -> Self {
        Self {
            f_star: Some(f_star),
            thresholds,
            tracked: Tracked::Gap,
            stop_when_passed: true,
            ..Self::iterations(max_iters)
        }
    }

    pub fn with_truth(mut self, truth: Vec<f64>) -> Self {
        self.truth = Some(truth);
        self
    }

    pub fn with_iterate_tol(mut self, tol: f64) -> Self {
        self.iterate_tol = Some(tol);
        self
    }

    pub fn with_pg_tol(mut self, tol: f64) -> Self {
        self.pg_tol = Some(tol);
        self
    }

    pub fn with_stagnation(mut self, window: usize, tol: f64) -> Self {
        self.stagnation = Some((window.max(1), tol));
        self
    }

    /// Keep iterating after the thresholds are passed.
    pub fn run_to_max(mut self) -> Self {
        self.stop_when_passed = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    MaxIterations,
    GapReached,
    RreReached,
    IterateTolerance,
    Stationary,
    /// The objective stopped decreasing over the stagnation window.
    Stagnated,
    /// The linesearch found no acceptable step within its backtracking limit.
    Stalled,
    /// The method cannot continue, e.g. an objective-domain violation.
    Failed(String),
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::MaxIterations => f.write_str("max-iterations"),
            Termination::GapReached => f.write_str("gap-reached"),
            Termination::RreReached => f.write_str("rre-reached"),
            Termination::IterateTolerance => f.write_str("iterate-tolerance"),
            Termination::Stationary => f.write_str("stationary"),
            Termination::Stagnated => f.write_str("stagnated"),
            Termination::Stalled => f.write_str("stalled"),
            Termination::Failed(msg) => write!(f, "failed: {msg}"),
        }
    }
}

/// One row of a run history. Row 0 is the starting point, with no steplength.
#[derive(Debug, Clone, PartialEq)]
pub struct IterRecord {
    pub iter: usize,
    pub f: f64,
    pub alpha: Option<f64>,
    pub lambda: Option<f64>,
    pub rre: Option<f64>,
    pub gap: Option<f64>,
    pub feasibility: f64,
    pub time_s: f64,
}

/// History, final iterate and termination reason of a solver run.
#[derive(Debug, Clone)]
pub struct SolverRun {
    pub history: Vec<IterRecord>,
    pub x: Vec<f64>,
    pub termination: Termination,
    /// `(threshold, first iteration at or below it)`, in the rule's order.
    pub passages: Vec<(f64, Option<usize>)>,
    /// Vector-vector products per Ritz factorization, when that rule was used.
    pub sweep_products: Vec<usize>,
}

impl SolverRun {
    pub fn iterations(&self) -> usize {
        self.history.len() - 1
    }

    pub fn final_value(&self) -> f64 {
        self.history.last().map(|r| r.f).unwrap_or(f64::NAN)
    }

    pub fn first_passage(&self, threshold: f64) -> Option<usize> {
        self.passages.iter().find(|(t, _)| *t == threshold).and_then(|(_, k)| *k)
    }

    /// Iteration with the smallest RRE, if RRE was tracked.
    pub fn min_rre(&self) -> Option<(usize, f64)> {
        self.history
            .iter()
            .filter_map(|r| r.rre.map(|e| (r.iter, e)))
            .fold(None, |best, (k, e)| match best {
                Some((_, b)) if b <= e => best,
                _ => Some((k, e)),
            })
    }

    pub fn objective_values(&self) -> Vec<f64> {
        self.history.iter().map(|r| r.f).collect()
    }

    /// Trace CSV: `iter,f,alpha,lambda,rre,gap,time_s`; missing values are empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,f,alpha,lambda,rre,gap,time_s\n");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for r in &self.history {
            let _ = writeln!(
                out,
                "{},{:e},{},{},{},{},{:.6}",
                r.iter,
                r.f,
                opt(r.alpha),
                opt(r.lambda),
                opt(r.rre),
                opt(r.gap),
                r.time_s
            );
        }
        out
    }
}

/// Per-run bookkeeping shared by all drivers: records rows, tracks first
/// passages, decides termination.
pub(crate) struct Monitor<'a> {
    rule: &'a StopRule,
    start: Instant,
    history: Vec<IterRecord>,
    passages: Vec<(f64, Option<usize>)>,
    warned_negative: bool,
}

impl<'a> Monitor<'a> {
    pub(crate) fn new(rule: &'a StopRule) -> Self {
        Self {
            rule,
            start: Instant::now(),
            history: Vec::new(),
            passages: rule.thresholds.iter().map(|&t| (t, None)).collect(),
            warned_negative: false,
        }
    }

    /// Records iteration `k` (rows must arrive in order) and returns a
    /// termination reason if the rule is met.
    pub(crate) fn observe(
        &mut self,
        f: f64,
        x: &[f64],
        x_prev: Option<&[f64]>,
        step: Option<(f64, f64)>,
        feasibility: f64,
        pg_norm: Option<f64>,
    ) -> Option<Termination> {
        let k = self.history.len();
        let rre = self.rule.truth.as_ref().and_then(|t| compute_rre(x, t).ok());
        let gap = self.rule.f_star.map(|fs| {
            let g = gap_value(f, fs);
            if g.value < 0.0 && !self.warned_negative {
                self.warned_negative = true;
                log::warn!("objective {f:e} is below the reference optimum {fs:e}");
            }
            g.value
        });
        self.history.push(IterRecord {
            iter: k,
            f,
            alpha: step.map(|s| s.0),
            lambda: step.map(|s| s.1),
            rre,
            gap,
            feasibility,
            time_s: self.start.elapsed().as_secs_f64(),
        });
        let tracked = match self.rule.tracked {
            Tracked::Rre => rre,
            Tracked::Gap => gap,
        };
        if let Some(v) = tracked {
            for (t, first) in &mut self.passages {
                if first.is_none() && v <= *t {
                    *first = Some(k);
                }
            }
        }
        let all_passed = !self.passages.is_empty() && self.passages.iter().all(|(_, p)| p.is_some());

        if k >= self.rule.max_iters {
            return Some(Termination::MaxIterations);
        }
        if self.rule.stop_when_passed && all_passed {
            return Some(match self.rule.tracked {
                Tracked::Gap => Termination::GapReached,
                Tracked::Rre => Termination::RreReached,
            });
        }
        if let (Some(tol), Some(prev)) = (self.rule.iterate_tol, x_prev) {
            if norm2(&sub(x, prev)) <= tol * norm2(x) {
                return Some(Termination::IterateTolerance);
            }
        }
        if let (Some(tol), Some(pg)) = (self.rule.pg_tol, pg_norm) {
            if pg <= tol {
                return Some(Termination::Stationary);
            }
        }
        if let Some((window, tol)) = self.rule.stagnation {
            if k >= window && self.history[k - window].f - f <= tol * f.abs() {
                return Some(Termination::Stagnated);
            }
        }
        None
    }

    pub(crate) fn finish(self, x: Vec<f64>, termination: Termination, sweep_products: Vec<usize>) -> SolverRun {
        SolverRun { history: self.history, x, termination, passages: self.passages, sweep_products }
    }
}

/// `||x - P(x - g)||_inf`.
pub(crate) fn projected_gradient_norm(set: &crate::feasible::FeasibleSet, x: &[f64], g: &[f64]) -> f64 {
    let trial: Vec<f64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
    norm_inf(&sub(x, &set.project(&trial)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rre_examples() {
        let t = [1.0, -2.0, 2.0];
        assert_eq!(compute_rre(&t, &t).unwrap(), 0.0);
        assert!((compute_rre(&[2.0, -4.0, 4.0], &t).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(compute_rre(&[0.0; 3], &t).unwrap(), 1.0);
        assert!(compute_rre(&t, &[0.0; 3]).is_err());
    }

    #[test]
    fn gap_examples() {
        assert_eq!(compute_gap(3.0, 3.0).value, 0.0);
        assert_eq!(compute_gap(6.0, 3.0).value, 1.0);
        let below = compute_gap(2.9, 3.0);
        assert!(below.value < 0.0 && !below.absolute);
        let abs = compute_gap(-1.0, -2.0);
        assert!(abs.absolute);
        assert_eq!(abs.value, 1.0);
    }

    #[test]
    fn first_passages_are_monotone() {
        let rule = StopRule::gap(1.0, vec![1e-4, 1e-6, 1e-8], 100).run_to_max();
        let mut mon = Monitor::new(&rule);
        // gap = 10^-k at iteration k
        let mut term = None;
        for k in 0..=100 {
            let f = 1.0 + 10f64.powi(-(k as i32));
            term = mon.observe(f, &[0.0], None, None, 0.0, None);
            if term.is_some() {
                break;
            }
        }
        assert_eq!(term, Some(Termination::MaxIterations));
        let run = mon.finish(vec![0.0], Termination::MaxIterations, vec![]);
        assert_eq!(run.first_passage(1e-4), Some(4));
        assert_eq!(run.first_passage(1e-6), Some(6));
        assert_eq!(run.first_passage(1e-8), Some(8));
        assert_eq!(run.history.len(), 101);
    }

    #[test]
    fn exact_solution_passes_everything() {
        let rule = StopRule::rre(vec![1.0, 2.0], vec![1e-4, 1e-6, 1e-8], 10);
        let mut mon = Monitor::new(&rule);
        let t = mon.observe(0.0, &[1.0, 2.0], None, None, 0.0, None);
        assert_eq!(t, Some(Termination::RreReached));
        let run = mon.finish(vec![1.0, 2.0], t.unwrap(), vec![]);
        assert_eq!(run.first_passage(1e-8), Some(0));
        assert_eq!(run.history[0].rre, Some(0.0));
    }

    #[test]
    fn stagnation_window() {
        let rule = StopRule::iterations(1000).with_stagnation(10, 1e-6);
        let mut mon = Monitor::new(&rule);
        // decrease halves each step, so it drops below 1e-6 relative around k = 20
        let mut stop_at = None;
        for k in 0..1000 {
            let f = 1.0 + 0.5f64.powi(k as i32);
            if mon.observe(f, &[0.0], None, None, 0.0, None) == Some(Termination::Stagnated) {
                stop_at = Some(k);
                break;
            }
        }
        let k = stop_at.unwrap() as i32;
        let f = |k: i32| 1.0 + 0.5f64.powi(k);
        assert!(f(k - 10) - f(k) <= 1e-6 * f(k));
        assert!(f(k - 11) - f(k - 1) > 1e-6 * f(k - 1));
    }

    #[test]
    fn csv_shape() {
        let rule = StopRule::iterations(1);
        let mut mon = Monitor::new(&rule);
        mon.observe(2.0, &[1.0], None, None, 0.0, None);
        mon.observe(1.0, &[0.5], Some(&[1.0]), Some((0.5, 1.0)), 0.0, None);
        let run = mon.finish(vec![0.5], Termination::MaxIterations, vec![]);
        let csv = run.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "iter,f,alpha,lambda,rre,gap,time_s");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,2e0,,,,,"));
        assert!(lines[2].starts_with("1,1e0,5e-1,1e0,,,"));
    }
}
