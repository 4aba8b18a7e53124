//! How often the surface body B(s ≥ c·ln n/n) escapes K_n, as c varies.
//!
//! Run with `cargo run --release --example containment`.

use polylab::experiments::{run_containment_experiment, ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    for c in [0.25, 1.0, 2.0, 4.0] {
        let cfg = ExperimentConfig::new("containment", ExperimentKind::Containment, ConvexBody::unit_ball(2)?, 2)
            .with_grid(vec![16, 64, 256])
            .with_replications(500)
            .with_seed(7)
            .with_c_alpha(c);
        let r = run_containment_experiment(&cfg)?;
        let row: Vec<String> = r
            .per_n
            .iter()
            .map(|p| format!("n={} (r={:.4}): {:.3}", p.n, p.surface_body_radius, p.failure_fraction))
            .collect();
        println!("c={c:<4} {}", row.join("  "));
    }
    Ok(())
}
