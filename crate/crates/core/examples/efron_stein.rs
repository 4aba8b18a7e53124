//! Efron–Stein jackknife n·E[(V(K_{n+1}) − V(K_n))²] against the variance.
//!
//! Run with `cargo run --release --example efron_stein`.

use polylab::experiments::{efron_stein_estimate, efron_stein_estimate_with, ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    let cfg = ExperimentConfig::new("es", ExperimentKind::EfronStein, ConvexBody::unit_ball(2)?, 2)
        .with_grid(vec![32, 64, 128, 256])
        .with_replications(1000)
        .with_seed(7);
    let r = efron_stein_estimate(&cfg)?;
    for p in &r.per_n {
        println!("n={:>4}  J={:.3e}  Var={:.3e}  J/Var={:.2}", p.n, p.jackknife, p.variance, p.ratio);
    }
    if let Some(fit) = &r.fit {
        println!("J slope {:.3} (variance exponent {})", fit.slope, r.target_exponent);
    }

    // Any symmetric functional of the sample can be plugged in. For the count of
    // points in the upper half-plane, E[J(n)] = n/2 and Var = n/4.
    let upper = efron_stein_estimate_with(&cfg, |pts| Ok(pts.iter().filter(|p| p[1] > 0.0).count() as f64))?;
    for p in &upper.per_n {
        println!("upper-half count: n={:>4}  J={:.1}  Var={:.1}", p.n, p.jackknife, p.variance);
    }
    Ok(())
}
