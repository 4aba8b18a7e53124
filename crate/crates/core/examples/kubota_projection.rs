//! Intrinsic volumes from averaged projection volumes (Kubota's formula).
//!
//! Run with `cargo run --release --example kubota_projection`.

use polylab::geometry::{binomial, reference_intrinsic_volume, sample_boundary};
use polylab::measures::{intrinsic_volume, kubota_estimate, kubota_estimate_body, kubota_prefactor, ProjectionPanel};
use polylab::{convex_hull, ConvexBody, RngStream, Vector};

fn main() -> polylab::Result<()> {
    let d = 4;
    let tesseract: Vec<Vector> = (0..16)
        .map(|m| Vector::from_slice(&(0..d).map(|i| ((m >> i) & 1) as f64).collect::<Vec<_>>()))
        .collect();
    let cube = convex_hull(&tesseract, d)?;
    for ell in 1..=d {
        let panel = ProjectionPanel::generate(d, ell, 20_000, 9);
        let (est, se) = kubota_estimate(&cube, ell, &panel)?;
        println!(
            "V_{ell}([0,1]^4): {est:.4} ± {se:.4}  (exact {}, prefactor {:.4})",
            binomial(d, ell),
            kubota_prefactor(d, ell)
        );
    }

    // Smooth bodies: each projection of an ellipsoid is an ellipsoid.
    let body = ConvexBody::ellipsoid(&[1.0, 2.0, 0.5])?;
    let panel = ProjectionPanel::generate(3, 2, 50_000, 10);
    let (est, se) = kubota_estimate_body(&body, 2, &panel)?;
    println!("V_2(ellipsoid): {est:.6} ± {se:.6}, quadrature {:.6}", reference_intrinsic_volume(&body, 2)?);

    // A shared panel evaluates V_2 of random polytopes in d=4.
    let ball = ConvexBody::unit_ball(d)?;
    let panel = ProjectionPanel::generate(d, 2, 256, 11);
    let mut rng = RngStream::new(12, 0);
    let pts: Vec<Vector> = (0..300).map(|_| sample_boundary(&ball, &mut rng)).collect();
    let k = convex_hull(&pts, d)?;
    println!(
        "V_2(K_300 in B^4) ≈ {:.4}, V_2(B^4) = {:.4}",
        intrinsic_volume(&k, 2, Some(&panel))?,
        reference_intrinsic_volume(&ball, 2)?
    );
    Ok(())
}
