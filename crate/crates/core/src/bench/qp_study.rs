//! The QP ordering study: median first passages of Ritz, ABBmin1 and BB1
//! over seeded instances, for each scaling, active-set size, spectrum and
//! linesearch memory.

use std::fmt::Write as _;
use std::path::Path;

use super::config::{ExperimentConfig, ProblemKind, ProblemSpec, ReferenceSpec, ScalingKind, SolverSpec, StepKind};
use super::runner::execute;
use crate::qp::Spectrum;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct QpSetting {
    pub scaling: ScalingKind,
    pub spectrum: Spectrum,
    pub n_active: usize,
    /// Linesearch memory `M`.
    pub memory: usize,
}

impl QpSetting {
    pub fn label(&self) -> String {
        let sc = match self.scaling {
            ScalingKind::Identity => "I",
            ScalingKind::InverseDiagonal => "PR",
            ScalingKind::ColemanLi => "CL",
            ScalingKind::Iterate => "XK",
            ScalingKind::Split => "split",
        };
        format!("{sc} {} na={} M={}", self.spectrum.label(), self.n_active, self.memory)
    }

    /// Experiment with the three compared rules on `instances` QPs of size 20.
    pub fn config(&self, seed: u64, instances: usize, thresholds: Vec<f64>, max_iters: usize) -> ExperimentConfig {
        let solver = |name: &str, step| {
            let mut s = SolverSpec::sgp(name, step).with_scaling(self.scaling);
            s.memory = self.memory;
            s
        };
        ExperimentConfig {
            name: self.label(),
            seed,
            out: None,
            thresholds,
            metric: None,
            max_iters,
            stop_when_passed: true,
            problem: ProblemSpec {
                kind: ProblemKind::Qp,
                n: 20,
                spectrum: Some(self.spectrum.clone()),
                n_active: Some(self.n_active),
                instances,
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
            solvers: vec![
                solver("ritz", StepKind::Ritz),
                solver("abbmin1", StepKind::Abbmin1),
                solver("bb1", StepKind::Bb1),
            ],
        }
    }
}

/// The 12 problem variations, each with `M = 1` and `M = 10`: the four
/// scalings on the geometric spectrum with 8 active constraints, 1 and 18
/// active constraints, the three bands and the three condition numbers.
pub fn standard_settings() -> Vec<QpSetting> {
    let mut base: Vec<(ScalingKind, Spectrum, usize)> = [
        ScalingKind::Identity,
        ScalingKind::InverseDiagonal,
        ScalingKind::ColemanLi,
        ScalingKind::Iterate,
    ]
    .into_iter()
    .map(|s| (s, Spectrum::Geometric, 8))
    .collect();
    for na in [1, 18] {
        base.push((ScalingKind::Identity, Spectrum::Geometric, na));
    }
    for sp in [
        Spectrum::BandA1,
        Spectrum::BandA2,
        Spectrum::BandA3,
        Spectrum::Cond { xi1: 0.1 },
        Spectrum::Cond { xi1: 1.0 },
        Spectrum::Cond { xi1: 10.0 },
    ] {
        base.push((ScalingKind::Identity, sp, 8));
    }
    base.into_iter()
        .flat_map(|(scaling, spectrum, n_active)| {
            [1, 10].map(|memory| QpSetting { scaling, spectrum: spectrum.clone(), n_active, memory })
        })
        .collect()
}

/// Median first passages per rule for one setting.
#[derive(Debug, Clone)]
pub struct StudyRow {
    pub setting: QpSetting,
    /// `(rule, median per threshold)`; `None` when the median run did not pass.
    pub medians: Vec<(String, Vec<Option<f64>>)>,
}

impl StudyRow {
    pub fn median(&self, rule: &str, threshold_index: usize) -> Option<f64> {
        self.medians.iter().find(|(r, _)| r == rule).and_then(|(_, m)| m[threshold_index])
    }
}

pub fn run_study(
    settings: &[QpSetting],
    seed: u64,
    instances: usize,
    thresholds: &[f64],
    max_iters: usize,
) -> Result<Vec<StudyRow>> {
    let scratch = std::env::temp_dir();
    settings
        .iter()
        .map(|s| {
            let cfg = s.config(seed, instances, thresholds.to_vec(), max_iters);
            let res = execute(&cfg, Path::new(&scratch))?;
            let medians = res
                .solver_names()
                .into_iter()
                .map(|name| {
                    let m = res.config.thresholds.iter().map(|&t| res.median_passage(&name, t)).collect();
                    (name, m)
                })
                .collect();
            Ok(StudyRow { setting: s.clone(), medians })
        })
        .collect()
}

/// Settings where `a`'s median at `threshold_index` is at most `b`'s
/// (a missing median counts as infinite), and the number of settings.
pub fn ordering_count(rows: &[StudyRow], a: &str, b: &str, threshold_index: usize) -> (usize, usize) {
    let inf = |v: Option<f64>| v.unwrap_or(f64::INFINITY);
    let wins = rows
        .iter()
        .filter(|r| {
            let (x, y) = (inf(r.median(a, threshold_index)), inf(r.median(b, threshold_index)));
            x <= y && x.is_finite()
        })
        .count();
    (wins, rows.len())
}

/// Plain-text table with one line per setting.
pub fn format_study(rows: &[StudyRow], thresholds: &[f64]) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else { return out };
    let _ = write!(out, "{:<28}", "setting");
    for (rule, _) in &first.medians {
        for t in thresholds {
            let _ = write!(out, " {:>14}", format!("{rule}@{t:e}"));
        }
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{:<28}", r.setting.label());
        for (_, m) in &r.medians {
            for v in m {
                let _ = write!(out, " {:>14}", v.map(|x| format!("{x}")).unwrap_or_else(|| "-".into()));
            }
        }
        out.push('\n');
    }
    out
}
