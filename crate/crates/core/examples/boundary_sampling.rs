//! Uniform points on the boundary of a ball and of an ellipsoid.
//!
//! Run with `cargo run --example boundary_sampling`.

use polylab::geometry::{reference_intrinsic_volume, sample_boundary};
use polylab::{ConvexBody, RngStream};

fn main() -> polylab::Result<()> {
    let mut rng = RngStream::new(42, 0);

    let sphere = ConvexBody::unit_ball(3)?;
    let p = sample_boundary(&sphere, &mut rng);
    println!("point on S^2: {:?} (norm {:.15})", &p[..], p.norm());

    // Ellipse with semiaxes 1 and 3: points follow arc length, so the long flat
    // sides near y = ±3 get fewer samples per unit of parameter angle.
    let ellipse = ConvexBody::ellipsoid(&[3.0, 1.0])?;
    let m = 100_000;
    let near_tip = (0..m)
        .filter(|_| sample_boundary(&ellipse, &mut rng)[0].abs() > 2.5)
        .count();
    let perimeter = 2.0 * reference_intrinsic_volume(&ellipse, 1)?;
    println!("ellipse perimeter {perimeter:.12}");
    println!("fraction with |x| > 2.5: {:.4}", near_tip as f64 / m as f64);

    // Streams are addressed by (seed, index), so a draw can be replayed exactly.
    let a = sample_boundary(&sphere, &mut RngStream::new(7, 123));
    let b = sample_boundary(&sphere, &mut RngStream::new(7, 123));
    assert_eq!(a, b);
    println!("replayed stream (7, 123): {:?}", &a[..]);
    Ok(())
}
