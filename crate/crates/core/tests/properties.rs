//! Property tests over the public operators, projections and steplength rules.

use proptest::prelude::*;
use sgp_ritz::feasible::{project_disc, DualField, FeasibleSet};
use sgp_ritz::image_ops::{discrete_divergence, discrete_gradient, BlurOperator, ImageGrid, PsfKernel};
use sgp_ritz::objectives::{KullbackLeibler, LeastSquares, Objective};
use sgp_ritz::steplength::{RitzSweep, StepBounds};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Grid size with three same-length vectors of that many pixels.
fn grid_vectors(lo: f64, hi: f64) -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2usize..10).prop_flat_map(move |n| {
        let v = || prop::collection::vec(lo..hi, n * n);
        (Just(n), v(), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_adjoint((n, w, x, y) in grid_vectors(0.0, 1.0), ci in 0usize..10, cj in 0usize..10) {
        let psf = PsfKernel::new(n, w, (ci % n, cj % n));
        prop_assume!(psf.is_ok());
        let op = BlurOperator::new(&psf.unwrap());
        let lhs = dot(&op.apply(&x).unwrap(), &y);
        let rhs = dot(&x, &op.apply_adjoint(&y).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn divergence_is_negative_adjoint((n, x, p1, p2) in grid_vectors(-5.0, 5.0)) {
        let p: Vec<f64> = p1.into_iter().chain(p2).collect();
        let img = ImageGrid::new(n, x.clone()).unwrap();
        let lhs = dot(&discrete_gradient(&img).to_stacked(), &p);
        let rhs = -dot(&x, discrete_divergence(n, &p).unwrap().values());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn nonneg_projection_is_nearest(x in prop::collection::vec(-10.0..10.0f64, 1..40), seed in any::<u64>()) {
        let set = FeasibleSet::NonNegative;
        let px = set.project(&x);
        prop_assert_eq!(set.violation(&px), 0.0);
        prop_assert_eq!(&set.project(&px), &px);
        // any other feasible point is at least as far
        let z: Vec<f64> = x.iter().enumerate().map(|(i, _)| ((seed >> (i % 64)) & 3) as f64).collect();
        let d = |a: &[f64]| a.iter().zip(&x).map(|(u, v)| (u - v).powi(2)).sum::<f64>();
        prop_assert!(d(&px) <= d(&z));
    }

    #[test]
    fn disc_projection_lands_in_discs((n, _, a, b) in grid_vectors(-3.0, 3.0)) {
        let p = DualField::new(n, a.iter().chain(&b).copied().collect()).unwrap();
        let q = project_disc(&p);
        prop_assert!(q.is_feasible());
        let again = project_disc(&q);
        for (u, v) in again.values.iter().zip(&q.values) {
            prop_assert!((u - v).abs() <= 1e-15);
        }
        // pairs already inside are untouched
        let m = n * n;
        for i in 0..m {
            if a[i].hypot(b[i]) <= 1.0 {
                prop_assert_eq!((q.values[i], q.values[i + m]), (a[i], b[i]));
            }
        }
    }

    #[test]
    fn splitting_reproduces_gradient((n, x, y, _) in grid_vectors(0.1, 50.0), bg in 0.0..5.0f64) {
        let psf = PsfKernel::gaussian(n.max(3), 1.0).unwrap();
        prop_assume!(psf.n() == n);
        let ls = LeastSquares::with_scalar_background(BlurOperator::new(&psf), y.clone(), bg).unwrap();
        let kl = KullbackLeibler::with_scalar_background(BlurOperator::new(&psf), y, bg + 0.1).unwrap();
        for obj in [&ls as &dyn Objective, &kl] {
            let (_, g) = obj.value_grad(&x).unwrap();
            let s = obj.split_gradient(&x).unwrap();
            let ginf = g.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            for ((u, v), gj) in s.u.iter().zip(&s.v).zip(&g) {
                prop_assert!(*u >= 0.0 && *v > 0.0);
                prop_assert!((u - v + gj).abs() <= 1e-10 * (1.0 + ginf));
            }
        }
    }

    #[test]
    fn steplength_clamp_stays_in_bounds(lo in 1e-8..1.0f64, span in 1.0..1e6f64, a in prop::num::f64::ANY) {
        let b = StepBounds::new(lo, lo * (1.0 + span)).unwrap();
        let c = b.clamp(a);
        prop_assert!(c >= b.alpha_min && c <= b.alpha_max);
    }

    #[test]
    fn ritz_steps_bounded_and_increasing(
        diag in prop::collection::vec(0.5..50.0f64, 6),
        g0 in prop::collection::vec(0.2..1.0f64, 6),
        alphas in prop::collection::vec(0.01..0.5f64, 3),
    ) {
        let bounds = StepBounds::new(1e-3, 1.0).unwrap();
        let mut sweep = RitzSweep::new(3, 0.1, bounds);
        let mut g = g0;
        for &al in &alphas {
            sweep.push_column(g.clone(), al);
            g = g.iter().zip(&diag).map(|(gi, d)| gi - al * d * gi).collect();
        }
        let steps = sweep.compute_ritz(&g);
        prop_assert!(steps.iter().all(|s| (1e-3..=1.0).contains(s)));
        prop_assert!(steps.windows(2).all(|w| w[0] <= w[1]));
        // Ritz values of a diagonal Hessian lie in its spectrum's hull
        let (dmin, dmax) = diag.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), &d| (a.min(d), b.max(d)));
        for s in &steps {
            let theta = 1.0 / s;
            prop_assert!(theta >= dmin * (1.0 - 1e-8) || *s == 1.0);
            prop_assert!(theta <= dmax * (1.0 + 1e-8) || *s == 1e-3);
        }
    }
}
