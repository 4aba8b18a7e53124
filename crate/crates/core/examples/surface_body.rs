//! Caps, surface-body radii and the containment predicate in the unit ball.
//!
//! Run with `cargo run --example surface_body`.

use polylab::geometry::sample_boundary;
use polylab::surface_body::{
    boundary_cap_measure, cap_exponent_check, cap_volume, contains_surface_body, surface_body_radius, tau_threshold,
    CapDirection, CapSpec,
};
use polylab::{convex_hull, ConvexBody, RngStream, Vector};

fn main() -> polylab::Result<()> {
    let cap = CapSpec::from_height(3, 0.2)?;
    println!(
        "d=3 cap of height 0.2: boundary share {:.6}, volume {:.6}",
        boundary_cap_measure(&cap),
        cap_volume(&cap)
    );
    for t in [0.01, 0.1, 0.25] {
        println!(
            "radius of B(s >= {t}): d=2 {:.6}, d=3 {:.6}, d=5 {:.6}",
            surface_body_radius(t, 2)?,
            surface_body_radius(t, 3)?,
            surface_body_radius(t, 5)?
        );
    }

    let grid: Vec<f64> = (0..7).map(|i| 10f64.powf(-6.0 + 0.5 * i as f64)).collect();
    for d in [2, 3, 4] {
        for dir in [CapDirection::BoundaryOfVolumeCap, CapDirection::VolumeOfBoundaryCap] {
            let fit = cap_exponent_check(d, &grid, dir)?;
            println!("d={d} {dir:?}: exponent {:.4} (expected {:.4})", fit.slope, dir.expected_exponent(d));
        }
    }

    let ball = ConvexBody::unit_ball(2)?;
    let mut rng = RngStream::new(5, 0);
    let n = 500;
    let pts: Vec<Vector> = (0..n).map(|_| sample_boundary(&ball, &mut rng)).collect();
    let k = convex_hull(&pts, 2)?;
    for c in [0.1, 1.0, 4.0] {
        let tau = tau_threshold(n as f64, c);
        println!("c={c}: tau={tau:.5}, B(s >= tau) inside K_500: {}", contains_surface_body(&k, tau)?);
    }
    Ok(())
}
