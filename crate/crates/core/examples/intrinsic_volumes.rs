//! Exact intrinsic volumes of polytopes and reference values of smooth bodies.
//!
//! Run with `cargo run --example intrinsic_volumes`.

use polylab::geometry::{reference_intrinsic_volume, sample_boundary};
use polylab::measures::{intrinsic_volume, mean_width_v1_d3};
use polylab::{convex_hull, ConvexBody, RngStream, Vector};

fn main() -> polylab::Result<()> {
    let cube: Vec<Vector> = (0..8)
        .map(|m| Vector::from_slice(&[(m & 1) as f64, ((m >> 1) & 1) as f64, ((m >> 2) & 1) as f64]))
        .collect();
    let c = convex_hull(&cube, 3)?;
    for ell in 1..=3 {
        println!("V_{ell}(unit cube) = {}", intrinsic_volume(&c, ell, None)?);
    }
    println!("mean width of the cube: {}", mean_width_v1_d3(&c)?);

    let body = ConvexBody::ellipsoid(&[1.0, 1.5, 0.7])?;
    let mut rng = RngStream::new(3, 0);
    for n in [50, 500, 5000] {
        let pts: Vec<Vector> = (0..n).map(|_| sample_boundary(&body, &mut rng)).collect();
        let k = convex_hull(&pts, 3)?;
        println!(
            "n={n:>5}: V_3 = {:.6}, V_2 = {:.6}",
            intrinsic_volume(&k, 3, None)?,
            intrinsic_volume(&k, 2, None)?
        );
    }
    println!(
        "ellipsoid:  V_3 = {:.6}, V_2 = {:.6}",
        reference_intrinsic_volume(&body, 3)?,
        reference_intrinsic_volume(&body, 2)?
    );

    // Without an exact path a projection panel is required.
    let four = ConvexBody::unit_ball(4)?;
    let pts: Vec<Vector> = (0..30).map(|_| sample_boundary(&four, &mut rng)).collect();
    let k = convex_hull(&pts, 4)?;
    println!("V_2 in d=4 without a panel: {}", intrinsic_volume(&k, 2, None).unwrap_err());
    Ok(())
}
