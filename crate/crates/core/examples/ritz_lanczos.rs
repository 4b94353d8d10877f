//! Ritz values from a steepest-descent gradient history approach the
//! Hessian's spectrum, without ever multiplying by the Hessian.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgp_ritz::steplength::ritz_factorize;

fn main() {
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let a = &b.transpose() * &b + DMatrix::identity(n, n);
    let mut eig: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    println!("eig(A)        {}", fmt(&eig));

    let alphas: Vec<f64> = (0..n).map(|k| 0.05 + 0.01 * k as f64).collect();
    let mut g = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
    let mut cols = Vec::new();
    for &al in &alphas {
        cols.push(g.as_slice().to_vec());
        g = &g - al * (&a * &g);
    }
    let recips: Vec<f64> = alphas.iter().map(|a| 1.0 / a).collect();
    for m in [1, 3, 5, n] {
        let f = ritz_factorize(&cols[n - m..], &recips[n - m..], g.as_slice()).expect("full-rank history");
        println!("m = {m}  ritz   {}   ({} dot products)", fmt(&f.ritz_values), f.products);
    }
}

fn fmt(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:8.4}")).collect::<Vec<_>>().join(" ")
}
