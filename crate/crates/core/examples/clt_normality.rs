//! Kolmogorov distance of the standardized V_ℓ(K_n) to N(0,1).
//!
//! Run with `cargo run --release --example clt_normality`.

use polylab::experiments::{run_clt_experiment, ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    for d in [2, 3] {
        let cfg = ExperimentConfig::new("clt", ExperimentKind::Clt, ConvexBody::unit_ball(d)?, d)
            .with_grid(vec![16, 64, 256])
            .with_replications(1000)
            .with_seed(7);
        let r = run_clt_experiment(&cfg)?;
        println!("d={d}, standardization {:?}", r.standardization);
        for p in &r.per_n {
            println!("  n={:>4}  d_K={:.4}  skewness={:+.3}", p.n, p.d_k, p.skewness);
        }
    }
    Ok(())
}
