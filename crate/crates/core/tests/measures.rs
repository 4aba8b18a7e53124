use polylab::geometry::{binomial, kappa, reference_intrinsic_volume};
use polylab::measures::{
    intrinsic_volume, kubota_estimate, kubota_estimate_body, mean_width_v1_d3, sample_grassmannian, volume,
    ProjectionPanel,
};
use polylab::{convex_hull, ConvexBody, Polytope, RngStream, Vector};

fn cube(d: usize) -> Polytope {
    let pts: Vec<Vector> = (0..1usize << d)
        .map(|m| {
            let c: Vec<f64> = (0..d).map(|i| ((m >> i) & 1) as f64).collect();
            Vector::from_slice(&c)
        })
        .collect();
    convex_hull(&pts, d).unwrap()
}

#[test]
fn cube_via_kubota_panel() {
    for (d, ell) in [(4, 1), (4, 2), (3, 2), (3, 1)] {
        let panel = ProjectionPanel::generate(d, ell, 20_000, 11);
        let (est, se) = kubota_estimate(&cube(d), ell, &panel).unwrap();
        let exact = binomial(d, ell);
        assert!((est - exact).abs() <= 4.0 * se, "d={d} ell={ell}: {est} ± {se} vs {exact}");
    }
}

#[test]
fn simplex_mean_width_matches_kubota() {
    let pts = [
        Vector::from_slice(&[0.0, 0.0, 0.0]),
        Vector::from_slice(&[1.0, 0.0, 0.0]),
        Vector::from_slice(&[0.2, 0.9, 0.0]),
        Vector::from_slice(&[0.3, 0.1, 1.3]),
    ];
    let p = convex_hull(&pts, 3).unwrap();
    let exact = mean_width_v1_d3(&p).unwrap();
    let panel = ProjectionPanel::generate(3, 1, 200_000, 5);
    let (est, se) = kubota_estimate(&p, 1, &panel).unwrap();
    assert!((est - exact).abs() <= 4.0 * se, "{est} ± {se} vs {exact}");
}

#[test]
fn homogeneity_of_exact_paths() {
    let mut rng = RngStream::new(9, 0);
    let body = ConvexBody::unit_ball(3).unwrap();
    let pts: Vec<Vector> = (0..40).map(|_| polylab::geometry::sample_boundary(&body, &mut rng)).collect();
    let p = convex_hull(&pts, 3).unwrap();
    let lambda = 1.7f64;
    let q = p.map_vertices(|x| *x * lambda).unwrap();
    for ell in 1..=3 {
        let a = intrinsic_volume(&p, ell, None).unwrap();
        let b = intrinsic_volume(&q, ell, None).unwrap();
        assert!((b - lambda.powi(ell as i32) * a).abs() < 1e-12 * b, "ell={ell}");
    }
}

#[test]
fn rotation_invariance_of_mean_width() {
    let p = cube(3);
    let mut rng = RngStream::new(4, 0);
    let rot = sample_grassmannian(3, 3, &mut rng);
    let q = p.map_vertices(|x| rot.coordinates(x)).unwrap();
    let a = mean_width_v1_d3(&p).unwrap();
    let b = mean_width_v1_d3(&q).unwrap();
    assert!((a - 3.0).abs() < 1e-12);
    assert!((a - b).abs() < 1e-12);
    assert!((volume(&q) - 1.0).abs() < 1e-12);
}

#[test]
fn ellipsoid_surface_via_body_kubota() {
    // Kubota over projected ellipses against the independent quadrature reference.
    let body = ConvexBody::ellipsoid(&[1.0, 0.6, 1.8]).unwrap();
    let panel = ProjectionPanel::generate(3, 2, 100_000, 21);
    let (est, se) = kubota_estimate_body(&body, 2, &panel).unwrap();
    let reference = reference_intrinsic_volume(&body, 2).unwrap();
    assert!((est - reference).abs() <= 4.0 * se, "{est} ± {se} vs {reference}");
}

#[test]
fn ball_reference_closed_forms() {
    // V_ℓ(B^d) = C(d,ℓ) κ_d / κ_{d−ℓ}
    let ball = ConvexBody::unit_ball(3).unwrap();
    assert!((reference_intrinsic_volume(&ball, 1).unwrap() - 4.0).abs() < 1e-12);
    assert!((reference_intrinsic_volume(&ball, 2).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    assert!((reference_intrinsic_volume(&ball, 3).unwrap() - kappa(3)).abs() < 1e-12);
}
