use std::f64::consts::PI;

use polylab::geometry::{kappa, reference_intrinsic_volume, sample_boundary, sample_sphere};
use polylab::{ConvexBody, RngStream};

fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let h = (b - a) / steps as f64;
    let inner: f64 = (1..steps).map(|i| f(a + h * i as f64)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}

#[test]
fn sphere_moments() {
    let d = 4;
    let m = 100_000;
    let mut rng = RngStream::new(1, 0);
    let mut first = [0.0; 4];
    let mut second = [[0.0; 4]; 4];
    for _ in 0..m {
        let u = sample_sphere(d, &mut rng);
        assert!((u.norm() - 1.0).abs() < 1e-12);
        for i in 0..d {
            first[i] += u[i];
            for j in 0..d {
                second[i][j] += u[i] * u[j];
            }
        }
    }
    let mf = m as f64;
    for i in 0..d {
        assert!((first[i] / mf).abs() < 4.0 * (1.0 / (d as f64 * mf)).sqrt());
        for j in 0..d {
            let expected = if i == j { 1.0 / d as f64 } else { 0.0 };
            assert!((second[i][j] / mf - expected).abs() < 0.005, "({i},{j})");
        }
    }
}

fn ellipse_speed(a: f64, b: f64) -> impl Fn(f64) -> f64 {
    move |phi: f64| (a * a * phi.sin().powi(2) + b * b * phi.cos().powi(2)).sqrt()
}

#[test]
fn ellipse_perimeter_against_trapezoid() {
    // The trapezoid rule is spectrally accurate for periodic integrands.
    let body = ConvexBody::ellipsoid(&[1.0, 2.0]).unwrap();
    let oracle = trapezoid(ellipse_speed(1.0, 2.0), 0.0, 2.0 * PI, 4096);
    assert!((oracle - 9.688448220547675).abs() < 1e-12);
    let half = reference_intrinsic_volume(&body, 1).unwrap();
    assert!((2.0 * half - oracle).abs() < 1e-9, "{half}");
    assert!((reference_intrinsic_volume(&body, 2).unwrap() - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn ellipse_samples_follow_arc_length() {
    let (a, b) = (1.0, 2.0);
    let body = ConvexBody::ellipsoid(&[a, b]).unwrap();
    let perimeter = trapezoid(ellipse_speed(a, b), 0.0, 2.0 * PI, 4096);
    let p_first = trapezoid(ellipse_speed(a, b), 0.0, PI / 4.0, 20_000) / perimeter;
    let m = 200_000;
    let mut rng = RngStream::new(2, 0);
    let (mut in_arc, mut upper) = (0usize, 0usize);
    for _ in 0..m {
        let x = sample_boundary(&body, &mut rng);
        assert!(body.on_boundary(&x, 1e-10));
        let phi = (x[1] / b).atan2(x[0] / a);
        if (0.0..=PI / 4.0).contains(&phi) {
            in_arc += 1;
        }
        if x[1] > 0.0 {
            upper += 1;
        }
    }
    let mf = m as f64;
    let tol = |p: f64| 4.0 * (p * (1.0 - p) / mf).sqrt();
    assert!((in_arc as f64 / mf - p_first).abs() < tol(p_first), "{} vs {p_first}", in_arc as f64 / mf);
    assert!((upper as f64 / mf - 0.5).abs() < tol(0.5));
    // Uniform in φ would give 1/8; arc length weights the flat side less.
    assert!((p_first - 0.125).abs() > 5.0 * tol(p_first));
}

#[test]
fn prolate_spheroid_surface() {
    let (a, c) = (1.0f64, 2.0f64);
    let e = (1.0 - a * a / (c * c)).sqrt();
    let area = 2.0 * PI * a * a * (1.0 + c / (a * e) * e.asin());
    let body = ConvexBody::ellipsoid(&[a, a, c]).unwrap();
    let half = reference_intrinsic_volume(&body, 2).unwrap();
    assert!((2.0 * half - area).abs() < 1e-9 * area, "{} vs {area}", 2.0 * half);
    assert!((reference_intrinsic_volume(&body, 3).unwrap() - kappa(3) * a * a * c).abs() < 1e-12);
}

#[test]
fn oblate_spheroid_surface() {
    let (a, c) = (2.0f64, 1.0f64);
    let e = (1.0 - c * c / (a * a)).sqrt();
    let area = 2.0 * PI * a * a * (1.0 + (1.0 - e * e) / e * e.atanh());
    let body = ConvexBody::ellipsoid(&[a, a, c]).unwrap();
    let half = reference_intrinsic_volume(&body, 2).unwrap();
    assert!((2.0 * half - area).abs() < 1e-9 * area);
}

#[test]
fn ellipsoid_samples_have_uniform_surface_density() {
    // Fraction of surface area with z > c/2 on a prolate spheroid, by the
    // surface-of-revolution integral 2π ∫ r(z) sqrt(1 + r'(z)²) dz.
    let (a, c) = (1.0f64, 2.0f64);
    let band = |z: f64| {
        let r = a * (1.0 - z * z / (c * c)).sqrt();
        let dr = -a * z / (c * c * (1.0 - z * z / (c * c)).sqrt());
        2.0 * PI * r * (1.0 + dr * dr).sqrt()
    };
    let cap = trapezoid(band, c / 2.0, c * (1.0 - 1e-12), 200_000);
    let e = (1.0 - a * a / (c * c)).sqrt();
    let total = 2.0 * PI * a * a * (1.0 + c / (a * e) * e.asin());
    let p = cap / total;
    let body = ConvexBody::ellipsoid(&[a, a, c]).unwrap();
    let mut rng = RngStream::new(3, 0);
    let m = 200_000;
    let hits = (0..m).filter(|_| sample_boundary(&body, &mut rng)[2] > c / 2.0).count();
    let f = hits as f64 / m as f64;
    assert!((f - p).abs() < 4.0 * (p * (1.0 - p) / m as f64).sqrt() + 1e-4, "{f} vs {p}");
}
