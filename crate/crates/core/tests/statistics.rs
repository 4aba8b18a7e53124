use polylab::quadrature::adaptive_simpson;
use polylab::stats::{kolmogorov_distance, normal_cdf};
use polylab::RngStream;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn phi_oracle(x: f64) -> f64 {
    let density = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    0.5 + adaptive_simpson(density, 0.0, x, 1e-14)
}

#[test]
fn normal_cdf_against_quadrature() {
    assert!((phi_oracle(1.959964) - 0.975).abs() < 2e-6);
    assert!((normal_cdf(1.959964) - 0.975).abs() < 2e-6);
    for i in -60..=60 {
        let x = i as f64 / 10.0;
        assert!((normal_cdf(x) - phi_oracle(x)).abs() < 1.2e-7, "x={x}");
    }
}

fn inverse_cdf(p: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn quantile_grid_distance() {
    let m = 50;
    let samples: Vec<f64> = (1..=m).map(|i| inverse_cdf((i as f64 - 0.5) / m as f64)).collect();
    let d = kolmogorov_distance(&samples, normal_cdf).unwrap();
    assert!((d - 0.5 / m as f64).abs() < 1e-9, "{d}");
}

/// Supremum over every candidate point: the empirical CDF and its left limit
/// at each sample, counted by a double loop.
fn brute_force_ks(samples: &[f64]) -> f64 {
    let m = samples.len() as f64;
    let mut best = 0.0f64;
    for &x in samples {
        let at = samples.iter().filter(|&&y| y <= x).count() as f64 / m;
        let before = samples.iter().filter(|&&y| y < x).count() as f64 / m;
        let f = normal_cdf(x);
        best = best.max((at - f).abs()).max((before - f).abs());
    }
    best
}

proptest! {
    #[test]
    fn ks_matches_brute_force(raw in prop::collection::vec(-30i32..30, 1..100)) {
        // Coarse values force duplicates.
        let samples: Vec<f64> = raw.iter().map(|&k| k as f64 / 10.0).collect();
        let fast = kolmogorov_distance(&samples, normal_cdf).unwrap();
        prop_assert!((fast - brute_force_ks(&samples)).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&fast));
    }
}

#[test]
fn dkw_self_test() {
    let r = 4000;
    let bound = 1.5 * ((2.0f64 / 0.01).ln() / (2.0 * r as f64)).sqrt();
    for seed in 0..5 {
        let mut rng = RngStream::new(seed, 0);
        let z: Vec<f64> = (0..r).map(|_| rng.sample(StandardNormal)).collect();
        let d = kolmogorov_distance(&z, normal_cdf).unwrap();
        assert!(d <= bound, "seed {seed}: {d} > {bound}");
    }
}
