//! Mean deficit V_ℓ(K) − V_ℓ(K_n) ~ c·n^{−2/(d−1)}, on a ball and an ellipse.
//!
//! Run with `cargo run --release --example mean_deficit`.

use polylab::experiments::{run_mean_deficit_experiment, ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    let bodies = [
        ConvexBody::unit_ball(2)?,
        ConvexBody::ellipsoid(&[1.0, 2.5])?,
        ConvexBody::unit_ball(3)?,
    ];
    for body in bodies {
        let d = body.dim();
        let cfg = ExperimentConfig::new("deficit", ExperimentKind::MeanDeficit, body, d)
            .with_grid(vec![32, 64, 128, 256, 512])
            .with_replications(500)
            .with_seed(7);
        let r = run_mean_deficit_experiment(&cfg)?;
        println!("{:?} d={d}: V_d(K) = {:.6}", cfg.body.kind(), r.reference);
        for (p, (_, c)) in r.per_n.iter().zip(&r.plateau) {
            println!("  n={:>4}  deficit {:.4e} ± {:.1e}  scaled {c:.4}", p.n, p.estimate, p.stderr);
        }
        println!("  slope {:.3} (theory {:.3})", r.fit.slope, r.target_exponent);
    }
    Ok(())
}
