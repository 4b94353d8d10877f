//! Limited-memory steplengths from Ritz values of the gradient history.
//!
//! With `m` stored gradients `G` (scaled and masked), the reciprocals of the
//! steplengths that produced them in the bidiagonal `Gamma`, and the current
//! gradient `g`, the partially extended Cholesky factorization
//! `G' [G g] = R' [R r]` gives the Lanczos matrix `Phi = [R r] Gamma R^-1`
//! without touching the Hessian. The symmetric tridiagonal part of `Phi`
//! supplies the Ritz values; their reciprocals are the steplengths of the
//! next sweep.

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};

use super::StepBounds;
use crate::feasible::DiagScaling;
use crate::vecops::dot;

/// Relative pivot threshold below which the Gram matrix counts as rank deficient.
const PIVOT_TOL: f64 = 1e-12;

/// `D^{1/2} g~` where `g~_j = 0` on active components.
pub fn scaled_masked(g: &[f64], d: &DiagScaling, active: &[bool]) -> Vec<f64> {
    g.iter()
        .zip(d.diag())
        .zip(active)
        .map(|((gj, dj), &act)| if act { 0.0 } else { dj.sqrt() * gj })
        .collect()
}

/// Result of one factorization.
#[derive(Debug, Clone)]
pub struct RitzFactorization {
    /// `Phi = [R r] Gamma R^-1` over the columns that survived.
    pub phi: DMatrix<f64>,
    /// Eigenvalues of the symmetrized `Phi`, sorted decreasing.
    pub ritz_values: Vec<f64>,
    /// Oldest columns dropped for rank deficiency.
    pub dropped: usize,
    /// Vector-vector products spent forming `G' [G g]`.
    pub products: usize,
}

/// Factorizes the stored history.
///
/// `cols` are ordered oldest first, `recips[j]` is the reciprocal steplength
/// used after `cols[j]` was computed, and `current` is the newest gradient in
/// the same scaled, masked form. Returns `None` when every column had to be
/// dropped.
pub fn ritz_factorize(cols: &[Vec<f64>], recips: &[f64], current: &[f64]) -> Option<RitzFactorization> {
    let k = cols.len();
    assert_eq!(k, recips.len());
    if k == 0 {
        return None;
    }
    // G' [G g]: upper triangle of the Gram matrix plus the last column.
    let mut gram = DMatrix::<f64>::zeros(k, k + 1);
    let mut products = 0;
    for i in 0..k {
        for j in i..k {
            let v = dot(&cols[i], &cols[j]);
            gram[(i, j)] = v;
            gram[(j, i)] = v;
            products += 1;
        }
        gram[(i, k)] = dot(&cols[i], current);
        products += 1;
    }

    for start in 0..k {
        let size = k - start;
        let sub = gram.view((start, start), (size, size)).into_owned();
        let Some(r) = cholesky_upper(&sub) else { continue };
        let rhs: Vec<f64> = (0..size).map(|i| gram[(start + i, k)]).collect();
        let rvec = solve_lower_transposed(&r, &rhs);

        // T = [R r] Gamma, column j = rho_j ([R r]_j - [R r]_{j+1})
        let mut t = DMatrix::<f64>::zeros(size, size);
        for j in 0..size {
            let rho = recips[start + j];
            for i in 0..size {
                let next = if j + 1 < size { r[(i, j + 1)] } else { rvec[i] };
                t[(i, j)] = rho * (r[(i, j)] - next);
            }
        }
        // Phi = T R^-1, row by row: R' phi_i' = t_i'
        let mut phi = DMatrix::<f64>::zeros(size, size);
        for i in 0..size {
            let row: Vec<f64> = (0..size).map(|j| t[(i, j)]).collect();
            let sol = solve_lower_transposed(&r, &row);
            for j in 0..size {
                phi[(i, j)] = sol[j];
            }
        }
        let mut sym = DMatrix::<f64>::zeros(size, size);
        for i in 0..size {
            sym[(i, i)] = phi[(i, i)];
            for j in 0..i {
                sym[(i, j)] = phi[(i, j)];
                sym[(j, i)] = phi[(i, j)];
            }
        }
        let mut ritz_values: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        ritz_values.sort_by(|a, b| b.total_cmp(a));
        return Some(RitzFactorization { phi, ritz_values, dropped: start, products });
    }
    None
}

/// Upper-triangular `R` with `R' R = w`, or `None` on a pivot below
/// `PIVOT_TOL * trace(w)`.
fn cholesky_upper(w: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let k = w.nrows();
    let tol = PIVOT_TOL * w.trace();
    let mut r = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        let pivot = w[(j, j)] - (0..j).map(|i| r[(i, j)] * r[(i, j)]).sum::<f64>();
        if !(pivot > tol) {
            return None;
        }
        let rjj = pivot.sqrt();
        r[(j, j)] = rjj;
        for l in (j + 1)..k {
            let s = w[(j, l)] - (0..j).map(|i| r[(i, j)] * r[(i, l)]).sum::<f64>();
            r[(j, l)] = s / rjj;
        }
    }
    Some(r)
}

/// Solves `R' x = b` for upper-triangular `R`.
fn solve_lower_transposed(r: &DMatrix<f64>, b: &[f64]) -> Vec<f64> {
    let k = r.nrows();
    let mut x = vec![0.0; k];
    for i in 0..k {
        let s = b[i] - (0..i).map(|l| r[(l, i)] * x[l]).sum::<f64>();
        x[i] = s / r[(i, i)];
    }
    x
}

/// Sweep state: the stored history and the queue of steplengths for the
/// current sweep.
///
/// The history is a window over the last `m` gradients. The first
/// factorization happens once `m` columns are stored; afterwards a new one
/// runs whenever the queue empties, so a sweep that kept only some of its
/// Ritz values is simply shorter. Before the first factorization, and after
/// one that discards everything, the previous steplength is reused.
#[derive(Debug, Clone)]
pub struct RitzSweep {
    m: usize,
    cols: VecDeque<Vec<f64>>,
    recips: VecDeque<f64>,
    queue: VecDeque<f64>,
    fallback: f64,
    bounds: StepBounds,
    factorizations: usize,
    products: Vec<usize>,
}

impl RitzSweep {
    /// `alpha0` is used until the first sweep is available.
    pub fn new(m: usize, alpha0: f64, bounds: StepBounds) -> Self {
        assert!(m >= 1, "sweep length must be positive");
        Self {
            m,
            cols: VecDeque::with_capacity(m + 1),
            recips: VecDeque::with_capacity(m + 1),
            queue: VecDeque::new(),
            fallback: bounds.clamp(alpha0),
            bounds,
            factorizations: 0,
            products: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn stored(&self) -> usize {
        self.cols.len()
    }

    pub fn queue(&self) -> &VecDeque<f64> {
        &self.queue
    }

    /// Steplength returned when the queue is empty and no sweep is due.
    pub fn fallback(&self) -> f64 {
        self.fallback
    }

    pub fn factorizations(&self) -> usize {
        self.factorizations
    }

    /// Vector-vector products spent by each factorization so far.
    pub fn products_per_sweep(&self) -> &[usize] {
        &self.products
    }

    /// Stores `D^{1/2} g~` and `1 / alpha_used`, evicting the oldest column past `m`.
    pub fn push(&mut self, g: &[f64], d: &DiagScaling, active: &[bool], alpha_used: f64) {
        assert!(alpha_used > 0.0, "steplength must be positive");
        self.push_column(scaled_masked(g, d, active), alpha_used);
    }

    pub fn push_column(&mut self, col: Vec<f64>, alpha_used: f64) {
        self.cols.push_back(col);
        self.recips.push_back(1.0 / alpha_used);
        while self.cols.len() > self.m {
            self.cols.pop_front();
            self.recips.pop_front();
        }
    }

    /// Factorizes the stored history against `current` and refills the queue.
    /// Returns the new steplengths in consumption order.
    pub fn compute_ritz(&mut self, current: &[f64]) -> Vec<f64> {
        let cols: Vec<Vec<f64>> = self.cols.iter().cloned().collect();
        let recips: Vec<f64> = self.recips.iter().copied().collect();
        self.factorizations += 1;
        let steps = match ritz_factorize(&cols, &recips, current) {
            Some(f) => {
                self.products.push(f.products);
                // decreasing Ritz values -> increasing steplengths
                f.ritz_values
                    .iter()
                    .filter(|&&v| v > 0.0 && v.is_finite())
                    .map(|v| self.bounds.clamp(1.0 / v))
                    .collect()
            }
            None => {
                self.products.push((cols.len() + 3) * cols.len() / 2);
                Vec::new()
            }
        };
        self.queue = steps.iter().copied().collect();
        steps
    }

    /// Next steplength. `current` is evaluated only when a factorization is due
    /// and must return the current gradient in scaled, masked form.
    pub fn next_alpha(&mut self, current: impl FnOnce() -> Vec<f64>) -> f64 {
        if self.queue.is_empty() && self.cols.len() == self.m {
            let cur = current();
            self.compute_ritz(&cur);
        }
        let alpha = self.queue.pop_front().unwrap_or(self.fallback);
        self.fallback = alpha;
        alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasible::ClampBounds;
    use nalgebra::DVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Steepest descent gradients on `J = x'Ax/2` with the given steplengths.
    fn sd_gradients(a: &DMatrix<f64>, g0: &[f64], alphas: &[f64]) -> Vec<Vec<f64>> {
        let mut g = DVector::from_column_slice(g0);
        let mut out = vec![g.as_slice().to_vec()];
        for &al in alphas {
            g = &g - al * (a * &g);
            out.push(g.as_slice().to_vec());
        }
        out
    }

    #[test]
    fn single_column_is_rayleigh_quotient() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 2.0]);
        let g0 = [1.0, -2.0, 0.5];
        let gs = sd_gradients(&a, &g0, &[0.2]);
        let f = ritz_factorize(&gs[..1], &[1.0 / 0.2], &gs[1]).unwrap();
        let g = DVector::from_column_slice(&g0);
        let rq = g.dot(&(&a * &g)) / g.dot(&g);
        assert!((f.ritz_values[0] - rq).abs() < 1e-12);
    }

    #[test]
    fn full_memory_recovers_spectrum() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0]));
        let gs = sd_gradients(&a, &[1.0, 1.0], &[0.3, 0.7]);
        let f = ritz_factorize(&gs[..2], &[1.0 / 0.3, 1.0 / 0.7], &gs[2]).unwrap();
        assert!((f.ritz_values[0] - 2.0).abs() < 1e-10);
        assert!((f.ritz_values[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn negative_ritz_values_are_discarded() {
        // A = diag(-1, 2): the factorization sees an indefinite Hessian
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 2.0]));
        let gs = sd_gradients(&a, &[1.0, 1.0], &[0.3, 0.2]);
        let mut sweep = RitzSweep::new(2, 1.0, StepBounds::default());
        sweep.push_column(gs[0].clone(), 0.3);
        sweep.push_column(gs[1].clone(), 0.2);
        let steps = sweep.compute_ritz(&gs[2]);
        assert_eq!(steps.len(), 1);
        assert!((steps[0] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn rank_deficient_history_drops_oldest() {
        let mut sweep = RitzSweep::new(2, 1.0, StepBounds::default());
        sweep.push_column(vec![1.0, 0.0], 0.5);
        sweep.push_column(vec![1.0, 0.0], 0.5);
        let f = ritz_factorize(&[vec![1.0, 0.0], vec![1.0, 0.0]], &[2.0, 2.0], &[0.5, 0.0]).unwrap();
        assert_eq!(f.dropped, 1);
        assert_eq!(f.phi.nrows(), 1);
        // all-zero history: nothing survives, the caller falls back
        assert!(ritz_factorize(&[vec![0.0, 0.0]], &[1.0], &[0.0, 0.0]).is_none());
        let steps = sweep.compute_ritz(&[0.5, 0.0]);
        assert_eq!(steps.len(), 1);
    }

    #[test]
    fn push_masks_and_scales() {
        let d = DiagScaling::clamped(vec![4.0, 1.0, 9.0, 1.0], ClampBounds::default());
        let g = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(scaled_masked(&g, &d, &[false; 4]), vec![2.0, 2.0, 9.0, 4.0]);
        assert_eq!(scaled_masked(&g, &d, &[true; 4]), vec![0.0; 4]);
        let id = DiagScaling::identity(4);
        let x = [0.0, 1.0, 0.0, 2.0];
        let active: Vec<bool> = x.iter().map(|&v| v == 0.0).collect();
        assert_eq!(scaled_masked(&g, &id, &active), vec![0.0, 2.0, 0.0, 4.0]);
    }

    #[test]
    fn queue_is_consumed_in_order() {
        let mut sweep = RitzSweep::new(3, 1.0, StepBounds::default());
        // empty history: fallback
        assert_eq!(sweep.next_alpha(|| unreachable!()), 1.0);
        sweep.queue = VecDeque::from(vec![0.1, 0.2, 0.3]);
        assert_eq!(sweep.next_alpha(|| unreachable!()), 0.1);
        assert_eq!(sweep.next_alpha(|| unreachable!()), 0.2);
        assert_eq!(sweep.next_alpha(|| unreachable!()), 0.3);
        // fallback is now the last consumed value
        assert_eq!(sweep.next_alpha(|| unreachable!()), 0.3);
    }

    #[test]
    fn one_factorization_per_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let diag: Vec<f64> = (0..6).map(|i| 1.0 + i as f64).collect();
        let a = DMatrix::from_diagonal(&DVector::from_vec(diag));
        let mut g = DVector::from_vec((0..6).map(|_| rng.random_range(-1.0..1.0)).collect());
        let d = DiagScaling::identity(6);
        let active = [false; 6];
        let mut sweep = RitzSweep::new(3, 0.1, StepBounds::default());
        // warm-up: three fallback steps
        for _ in 0..3 {
            let al = sweep.next_alpha(|| unreachable!());
            sweep.push(g.as_slice(), &d, &active, al);
            g = &g - al * (&a * &g);
        }
        assert_eq!(sweep.factorizations(), 0);
        for _ in 0..9 {
            let cur = g.as_slice().to_vec();
            let al = sweep.next_alpha(|| cur);
            sweep.push(g.as_slice(), &d, &active, al);
            g = &g - al * (&a * &g);
        }
        assert_eq!(sweep.factorizations(), 3);
        assert!(sweep.products_per_sweep().iter().all(|&p| p == (3 + 3) * 3 / 2));
    }

    #[test]
    fn steplengths_respect_bounds_and_ordering() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 10.0, 100.0]));
        let gs = sd_gradients(&a, &[1.0, 1.0, 1.0], &[0.5, 0.05, 0.01]);
        let bounds = StepBounds::new(0.02, 0.5).unwrap();
        let mut sweep = RitzSweep::new(3, 1.0, bounds);
        for (j, al) in [0.5, 0.05, 0.01].iter().enumerate() {
            sweep.push_column(gs[j].clone(), *al);
        }
        let steps = sweep.compute_ritz(&gs[3]);
        assert_eq!(steps.len(), 3);
        assert!(steps.windows(2).all(|w| w[0] <= w[1]));
        assert!(steps.iter().all(|&s| (0.02..=0.5).contains(&s)));
    }
}
