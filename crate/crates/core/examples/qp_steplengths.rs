//! Ritz, ABBmin1 and BB1 on the standard grid of random QPs: median first
//! passages per setting and how often Ritz is at least as fast.
//!
//!     cargo run --release --example qp_steplengths -- [seed] [instances]

use sgp_ritz::bench::qp_study::{format_study, ordering_count, run_study, standard_settings};

fn main() -> sgp_ritz::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let instances: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let thresholds = [1e-4, 1e-6, 1e-8];

    let t0 = std::time::Instant::now();
    let rows = run_study(&standard_settings(), seed, instances, &thresholds, 5000)?;
    print!("{}", format_study(&rows, &thresholds));

    for (i, t) in thresholds.iter().enumerate() {
        let (a, n) = ordering_count(&rows, "ritz", "abbmin1", i);
        let (b, _) = ordering_count(&rows, "ritz", "bb1", i);
        println!("rre <= {t:e}: ritz <= abbmin1 in {a}/{n}, ritz <= bb1 in {b}/{n}");
    }
    println!("{:.1} s", t0.elapsed().as_secs_f64());
    Ok(())
}
