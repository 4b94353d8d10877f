//! Random non-negatively constrained quadratic programs with a prescribed
//! spectrum and a known solution.
//!
//! An instance is built backwards from its solution: `A = Q diag(xi) Q'`
//! with `Q` from the QR factorization of a Gaussian matrix, a random active
//! set `I_a`, multipliers `mu = 1` on `I_a`, `x*` uniform in `(0, 1)` off
//! `I_a`, and `y = A x* - mu`. Then `x*` minimizes `x'Ax/2 - y'x` over
//! `x >= 0`; see [`QpInstance::objective`].

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image_ops::matfile::{read_matrix, write_matrix};
use crate::objectives::Objective;
use crate::vecops::check_len;

/// Eigenvalue layout of the Hessian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Spectrum {
    /// `xi_i = sqrt(2)^i`, `i = 0..n-1`.
    Geometric,
    /// Extremes `1` and `sqrt(2)^(n-1)`, interior uniform in the lower third.
    BandA1,
    /// Interior uniform in the middle third.
    BandA2,
    /// Interior uniform in the upper third.
    BandA3,
    /// Smallest eigenvalue `xi1`, largest `sqrt(2)^(n-1)`, interior uniform
    /// between them.
    Cond { xi1: f64 },
    /// Explicit eigenvalues.
    Explicit { values: Vec<f64> },
}

/// `sqrt(2)^k`, exact for even `k` and identical across build profiles.
fn sqrt2_pow(k: usize) -> f64 {
    let even = 2f64.powi((k / 2) as i32);
    if k % 2 == 0 { even } else { even * std::f64::consts::SQRT_2 }
}

impl Spectrum {
    pub fn label(&self) -> String {
        match self {
            Spectrum::Geometric => "geometric".into(),
            Spectrum::BandA1 => "A1".into(),
            Spectrum::BandA2 => "A2".into(),
            Spectrum::BandA3 => "A3".into(),
            Spectrum::Cond { xi1 } => format!("cond-xi1={xi1}"),
            Spectrum::Explicit { .. } => "explicit".into(),
        }
    }

    /// Draws the eigenvalues, ascending except for explicit lists.
    pub fn eigenvalues<R: Rng>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        let top = sqrt2_pow(n - 1);
        let banded = |lo: f64, hi: f64, first: f64, rng: &mut R| -> Result<Vec<f64>> {
            if !(lo < hi) || !(first > 0.0) {
                return Err(Error::InvalidParameter(format!("empty eigenvalue band ({lo}, {hi})")));
            }
            let mut xi = vec![first];
            if n >= 2 {
                let mut mid: Vec<f64> = (0..n - 2).map(|_| rng.random_range(lo..hi)).collect();
                mid.sort_by(f64::total_cmp);
                xi.extend(mid);
                xi.push(top);
            }
            Ok(xi)
        };
        let xi = match self {
            Spectrum::Geometric => (0..n).map(|i| sqrt2_pow(i)).collect(),
            Spectrum::BandA1 => banded(1.0, top / 3.0, 1.0, rng)?,
            Spectrum::BandA2 => banded(top / 3.0, 2.0 * top / 3.0, 1.0, rng)?,
            Spectrum::BandA3 => banded(2.0 * top / 3.0, top, 1.0, rng)?,
            Spectrum::Cond { xi1 } => banded(*xi1, top, *xi1, rng)?,
            Spectrum::Explicit { values } => {
                check_len(n, values.len())?;
                values.clone()
            }
        };
        if let Some(v) = xi.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(format!("eigenvalue {v} is not positive")));
        }
        Ok(xi)
    }
}

/// A generated QP together with its exact solution.
#[derive(Debug, Clone)]
pub struct QpInstance {
    pub a: DMatrix<f64>,
    pub y: Vec<f64>,
    pub x_star: Vec<f64>,
    pub mu: Vec<f64>,
    /// Sorted indices of the active constraints.
    pub active_set: Vec<usize>,
    pub xi: Vec<f64>,
    pub seed: u64,
    pub spectrum: Spectrum,
}

pub fn generate_qp(n: usize, spectrum: &Spectrum, n_active: usize, seed: u64) -> Result<QpInstance> {
    if n == 0 {
        return Err(Error::InvalidParameter("QP dimension must be positive".into()));
    }
    if n_active > n {
        return Err(Error::InvalidParameter(format!("{n_active} active constraints exceed n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = spectrum.eigenvalues(n, &mut rng)?;

    let gauss = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = gauss.qr().q();
    let mut a = &q * DMatrix::from_diagonal(&DVector::from_column_slice(&xi)) * q.transpose();
    a = (&a + a.transpose()) * 0.5;

    let mut active_set = sample(&mut rng, n, n_active).into_vec();
    active_set.sort_unstable();
    let mut mu = vec![0.0; n];
    let mut x_star = vec![0.0; n];
    for i in 0..n {
        if active_set.binary_search(&i).is_ok() {
            mu[i] = 1.0;
        } else {
            // open interval (0, 1)
            let mut v = 0.0;
            while v == 0.0 {
                v = rng.random::<f64>();
            }
            x_star[i] = v;
        }
    }
    let ax = &a * DVector::from_column_slice(&x_star);
    let y = ax.iter().zip(&mu).map(|(v, m)| v - m).collect();
    Ok(QpInstance { a, y, x_star, mu, active_set, xi, seed, spectrum: spectrum.clone() })
}

/// Printed form `x'Ax - y'x` and its gradient `2Ax - y`.
pub fn qp_value_grad(inst: &QpInstance, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    check_len(inst.n(), x.len())?;
    let ax = inst.apply(x);
    let value = x.iter().zip(&ax).map(|(a, b)| a * b).sum::<f64>()
        - inst.y.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
    let grad = ax.iter().zip(&inst.y).map(|(a, y)| 2.0 * a - y).collect();
    Ok((value, grad))
}

impl QpInstance {
    pub fn n(&self) -> usize {
        self.y.len()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (&self.a * DVector::from_column_slice(x)).as_slice().to_vec()
    }

    pub fn condition_number(&self) -> f64 {
        let (lo, hi) = self.xi.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        hi / lo
    }

    /// Objective `x'Ax/2 - y'x`, whose constrained minimizer is `x_star`.
    pub fn objective(&self) -> QpObjective {
        QpObjective { a: self.a.clone(), y: self.y.clone(), lipschitz: self.xi.iter().fold(0.0, |m, &v| m.max(v)) }
    }

    /// Largest violation of `Ax* - y - mu = 0`, `mu >= 0`, `x* >= 0`, `mu'x* = 0`.
    pub fn kkt_residual(&self) -> f64 {
        let ax = self.apply(&self.x_star);
        let mut r = 0.0_f64;
        for i in 0..self.n() {
            r = r.max((ax[i] - self.y[i] - self.mu[i]).abs());
            r = r.max(-self.mu[i]).max(-self.x_star[i]);
        }
        let comp: f64 = self.mu.iter().zip(&self.x_star).map(|(m, x)| m * x).sum();
        r.max(comp.abs())
    }

    /// Writes `A.txt`, `y.txt`, `x_star.txt`, `mu.txt` and `meta.toml` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let n = self.n();
        write_matrix(&dir.join("A.txt"), n, n, self.a.transpose().as_slice())?;
        write_matrix(&dir.join("y.txt"), n, 1, &self.y)?;
        write_matrix(&dir.join("x_star.txt"), n, 1, &self.x_star)?;
        write_matrix(&dir.join("mu.txt"), n, 1, &self.mu)?;
        let meta = QpMeta {
            n,
            seed: self.seed,
            spectrum: self.spectrum.clone(),
            active_set: self.active_set.clone(),
            xi: self.xi.clone(),
        };
        let text = toml::to_string(&meta).map_err(|e| Error::Config(e.to_string()))?;
        fs::write(dir.join("meta.toml"), text)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let meta_path = dir.join("meta.toml");
        let text = fs::read_to_string(&meta_path)?;
        let meta: QpMeta = toml::from_str(&text)
            .map_err(|e| Error::Parse { path: meta_path.display().to_string(), msg: e.to_string() })?;
        let n = meta.n;
        let a = read_matrix(&dir.join("A.txt"))?;
        if a.rows != n || a.cols != n {
            return Err(Error::SizeMismatch { expected: n * n, got: a.rows * a.cols });
        }
        let vector = |name: &str| -> Result<Vec<f64>> {
            let m = read_matrix(&dir.join(name))?;
            check_len(n, m.values.len())?;
            Ok(m.values)
        };
        Ok(Self {
            a: DMatrix::from_row_slice(n, n, &a.values),
            y: vector("y.txt")?,
            x_star: vector("x_star.txt")?,
            mu: vector("mu.txt")?,
            active_set: meta.active_set,
            xi: meta.xi,
            seed: meta.seed,
            spectrum: meta.spectrum,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct QpMeta {
    n: usize,
    seed: u64,
    active_set: Vec<usize>,
    xi: Vec<f64>,
    spectrum: Spectrum,
}

/// `J(x) = x'Ax/2 - y'x` with dense symmetric `A`.
#[derive(Debug, Clone)]
pub struct QpObjective {
    a: DMatrix<f64>,
    y: Vec<f64>,
    lipschitz: f64,
}

impl QpObjective {
    pub fn new(a: DMatrix<f64>, y: Vec<f64>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::InvalidParameter("QP matrix must be square".into()));
        }
        check_len(a.nrows(), y.len())?;
        let lipschitz = a.clone().symmetric_eigenvalues().iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        Ok(Self { a, y, lipschitz })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn linear_term(&self) -> &[f64] {
        &self.y
    }

    /// `diag(A)`, for the inverse-diagonal scaling.
    pub fn diagonal(&self) -> Vec<f64> {
        self.a.diagonal().as_slice().to_vec()
    }
}

impl Objective for QpObjective {
    fn dim(&self) -> usize {
        self.y.len()
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        check_len(self.dim(), x.len())?;
        let ax = &self.a * DVector::from_column_slice(x);
        let mut value = 0.0;
        let grad = ax
            .iter()
            .zip(&self.y)
            .zip(x)
            .map(|((a, y), xi)| {
                value += xi * (0.5 * a - y);
                a - y
            })
            .collect();
        Ok((value, grad))
    }

    fn lipschitz(&self) -> Option<f64> {
        Some(self.lipschitz)
    }

    fn curvature(&self, d: &[f64]) -> Option<Result<f64>> {
        Some(check_len(self.dim(), d.len()).map(|_| {
            let v = DVector::from_column_slice(d);
            v.dot(&(&self.a * &v))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{fd_gradient, rel_err};

    #[test]
    fn no_active_constraints() {
        let inst = generate_qp(20, &Spectrum::Geometric, 0, 3).unwrap();
        assert!(inst.x_star.iter().all(|&v| v > 0.0 && v < 1.0));
        assert!(inst.mu.iter().all(|&m| m == 0.0));
        let ax = inst.apply(&inst.x_star);
        assert!(rel_err(&ax, &inst.y) < 1e-14);
    }

    #[test]
    fn all_constraints_active() {
        let inst = generate_qp(20, &Spectrum::Geometric, 20, 3).unwrap();
        assert!(inst.x_star.iter().all(|&v| v == 0.0));
        assert!(inst.y.iter().all(|&v| v == -1.0));
    }

    #[test]
    fn geometric_condition_number() {
        let inst = generate_qp(20, &Spectrum::Geometric, 8, 1).unwrap();
        let expected = sqrt2_pow(19);
        assert!((expected - 724.08).abs() < 0.01);
        let eig = inst.a.clone().symmetric_eigenvalues();
        let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        assert!((hi / lo - expected).abs() / expected < 1e-10);
        assert!((inst.condition_number() - expected).abs() < 1e-9);
    }

    #[test]
    fn kkt_and_orthogonality() {
        for (seed, spec) in [
            Spectrum::Geometric,
            Spectrum::BandA1,
            Spectrum::BandA2,
            Spectrum::BandA3,
            Spectrum::Cond { xi1: 0.1 },
            Spectrum::Cond { xi1: 10.0 },
        ]
        .iter()
        .enumerate()
        {
            let inst = generate_qp(20, spec, 8, seed as u64).unwrap();
            assert!(inst.kkt_residual() < 1e-12, "{spec:?}");
            assert_eq!(inst.active_set.len(), 8);
            // recover Q from the eigendecomposition and check the spectrum
            let mut eig: Vec<f64> = inst.a.clone().symmetric_eigenvalues().iter().copied().collect();
            eig.sort_by(f64::total_cmp);
            let mut xi = inst.xi.clone();
            xi.sort_by(f64::total_cmp);
            for (a, b) in eig.iter().zip(&xi) {
                assert!((a - b).abs() < 1e-10 * xi[19]);
            }
        }
    }

    #[test]
    fn generator_q_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let gauss = DMatrix::from_fn(20, 20, |_, _| rng.sample::<f64, _>(StandardNormal));
        let q = gauss.qr().q();
        let err = (q.transpose() * &q - DMatrix::identity(20, 20)).abs().max();
        assert!(err < 1e-12);
    }

    #[test]
    fn bands_and_cond() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let top = sqrt2_pow(19);
        let a1 = Spectrum::BandA1.eigenvalues(20, &mut rng).unwrap();
        assert_eq!(a1[0], 1.0);
        assert_eq!(a1[19], top);
        assert!(a1[1..19].iter().all(|&v| v > 1.0 && v < top / 3.0));
        let a3 = Spectrum::BandA3.eigenvalues(20, &mut rng).unwrap();
        assert!(a3[1..19].iter().all(|&v| v >= 2.0 * top / 3.0 && v < top));
        let c = Spectrum::Cond { xi1: 0.1 }.eigenvalues(20, &mut rng).unwrap();
        assert!((c[19] / c[0] - 7240.8).abs() < 0.1);
        assert!(Spectrum::Cond { xi1: -1.0 }.eigenvalues(20, &mut rng).is_err());
    }

    #[test]
    fn invalid_active_count() {
        assert!(generate_qp(5, &Spectrum::Geometric, 6, 0).is_err());
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = generate_qp(20, &Spectrum::BandA2, 8, 42).unwrap();
        let b = generate_qp(20, &Spectrum::BandA2, 8, 42).unwrap();
        assert_eq!(a.a, b.a);
        assert_eq!(a.y, b.y);
        assert_eq!(a.active_set, b.active_set);
    }

    #[test]
    fn printed_value_grad() {
        let inst = generate_qp(20, &Spectrum::Geometric, 8, 2).unwrap();
        let (v0, g0) = qp_value_grad(&inst, &vec![0.0; 20]).unwrap();
        assert_eq!(v0, 0.0);
        assert!(g0.iter().zip(&inst.y).all(|(g, y)| *g == -y));

        struct Printed<'a>(&'a QpInstance);
        impl Objective for Printed<'_> {
            fn dim(&self) -> usize {
                self.0.n()
            }
            fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
                qp_value_grad(self.0, x)
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let x: Vec<f64> = (0..20).map(|_| rng.random_range(-1.0..1.0)).collect();
            let (_, g) = qp_value_grad(&inst, &x).unwrap();
            let fd = fd_gradient(&Printed(&inst), &x, 1e-6);
            assert!(rel_err(&g, &fd) < 1e-7);
        }
    }

    #[test]
    fn printed_identity_case() {
        let inst = QpInstance {
            a: DMatrix::identity(3, 3),
            y: vec![0.0; 3],
            x_star: vec![0.0; 3],
            mu: vec![0.0; 3],
            active_set: vec![],
            xi: vec![1.0; 3],
            seed: 0,
            spectrum: Spectrum::Explicit { values: vec![1.0; 3] },
        };
        let (v, g) = qp_value_grad(&inst, &[1.0, 2.0, -1.0]).unwrap();
        assert_eq!(v, 6.0);
        assert_eq!(g, vec![2.0, 4.0, -2.0]);
    }

    #[test]
    fn solver_objective_is_stationary_at_x_star() {
        let inst = generate_qp(20, &Spectrum::Geometric, 8, 4).unwrap();
        let obj = inst.objective();
        let (_, g) = obj.value_grad(&inst.x_star).unwrap();
        for i in 0..20 {
            // g = mu on the active set, 0 elsewhere
            assert!((g[i] - inst.mu[i]).abs() < 1e-12);
        }
        let fd = fd_gradient(&obj, &inst.x_star, 1e-6);
        assert!(rel_err(&g, &fd) < 1e-7);
        assert_eq!(obj.lipschitz(), Some(sqrt2_pow(19)));
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let inst = generate_qp(6, &Spectrum::Cond { xi1: 0.5 }, 2, 11).unwrap();
        inst.save(dir.path()).unwrap();
        let back = QpInstance::load(dir.path()).unwrap();
        assert_eq!(back.a, inst.a);
        assert_eq!(back.y, inst.y);
        assert_eq!(back.x_star, inst.x_star);
        assert_eq!(back.active_set, inst.active_set);
        assert_eq!(back.spectrum, inst.spectrum);
    }
}
