//! Haar measure of subspaces L ∈ G(d,ℓ) within angle a of a fixed direction.
//!
//! Run with `cargo run --release --example grassmann_angles`.

use polylab::experiments::run_grassmannian_experiment;
use polylab::measures::{sample_grassmannian, subspace_angle};
use polylab::{RngStream, Vector};

fn main() -> polylab::Result<()> {
    let mut rng = RngStream::new(1, 0);
    let l = sample_grassmannian(4, 2, &mut rng);
    println!("orthonormality residual {:.1e}", l.orthonormality_residual());
    println!("angle(e_1, L) = {:.4}", subspace_angle(&Vector::unit(4, 0), &l));

    let a_grid = [0.05, 0.1, 0.2, 0.3, 0.5];
    for (d, ell) in [(3, 1), (3, 2), (4, 2), (5, 2)] {
        let r = run_grassmannian_experiment(d, ell, &a_grid, 200_000, 7)?;
        let probs: Vec<String> = r.per_a.iter().map(|p| format!("{:.2e}", p.probability)).collect();
        println!(
            "G({d},{ell}): slope {:.3} (theory {}), P = [{}]",
            r.fit.slope,
            r.target_exponent,
            probs.join(", ")
        );
    }
    Ok(())
}
