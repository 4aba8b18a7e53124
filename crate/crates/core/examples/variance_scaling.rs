//! Variance of V_ℓ(K_n) against n and its log-log slope, −(d+3)/(d−1).
//!
//! Run with `cargo run --release --example variance_scaling`.

use polylab::experiments::{run_variance_experiment, ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    for (d, ell, grid) in [(2, 2, vec![32, 64, 128, 256, 512]), (3, 3, vec![32, 64, 128, 256])] {
        let cfg = ExperimentConfig::new("variance", ExperimentKind::Variance, ConvexBody::unit_ball(d)?, ell)
            .with_grid(grid)
            .with_replications(1000)
            .with_seed(7);
        let report = run_variance_experiment(&cfg)?;
        println!("d={d} ell={ell}");
        for p in &report.per_n {
            println!("  n={:>4}  Var={:.4e} ± {:.1e}", p.n, p.estimate, p.stderr);
        }
        println!(
            "  slope {:.3} ± {:.3} (theory {:.3}), r² {:.4}",
            report.fit.slope, report.fit.slope_stderr, report.target_exponent, report.fit.r_squared
        );
    }
    Ok(())
}
