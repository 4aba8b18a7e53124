//! Summary statistics, log-log regression and normality metrics.

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// Ordinary least squares of `ln y` on `ln x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    /// `(ln x, ln y)` pairs the fit was computed from.
    pub points: Vec<(f64, f64)>,
}

impl FitResult {
    /// Fitted `y` at `x`.
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Fits `y ≈ C x^slope` by least squares in log-log coordinates.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(contract(format!("power-law fit needs >= 3 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite()))
    {
        return Err(contract(format!("power-law fit needs positive finite data, got ({x}, {y})")));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(contract("power-law fit needs at least two distinct x values"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let slope_stderr = (ssr / (m - 2.0) / sxx).sqrt();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ssr / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        slope_stderr,
        r_squared,
        points: logs,
    })
}

/// Complementary error function, Chebyshev fit with fractional error below
/// 1.2e-7 everywhere.
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let poly = -z * z - 1.265_512_23
        + t * (1.000_023_68
            + t * (0.374_091_96
                + t * (0.096_784_18
                    + t * (-0.186_288_06
                        + t * (0.278_868_07
                            + t * (-1.135_203_98
                                + t * (1.488_515_87 + t * (-0.822_152_23 + t * 0.170_872_77))))))));
    let ans = t * poly.exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

/// `erf(z)` for `|z| < 1/2` by its Maclaurin series.
fn erf_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..20 {
        term *= -z2 / n as f64;
        sum += term / (2 * n + 1) as f64;
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

/// Standard normal CDF. Absolute error at most 1.2e-7; `Φ(0) = 1/2` and
/// `Φ(-x) = 1 - Φ(x)` hold exactly.
pub fn normal_cdf(x: f64) -> f64 {
    let z = x.abs() / std::f64::consts::SQRT_2;
    let upper = if z < 0.5 {
        0.5 + 0.5 * erf_series(z)
    } else {
        1.0 - 0.5 * erfc(z)
    };
    if x >= 0.0 {
        upper
    } else {
        1.0 - upper
    }
}

/// `sup_u |F_m(u) − F(u)|` between the empirical CDF of `samples` and `cdf`.
pub fn kolmogorov_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(contract("Kolmogorov distance of an empty sample"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / m - f;
            let below = f - i as f64 / m;
            above.abs().max(below.abs())
        })
        .fold(0.0, f64::max))
}

/// Neumaier-compensated sum; long runs of similar terms otherwise drift.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + carry
}

pub fn mean(values: &[f64]) -> f64 {
    compensated_sum(values.iter().copied()) / values.len() as f64
}

/// Unbiased sample variance (two-pass).
pub fn sample_variance(values: &[f64]) -> f64 {
    let mu = mean(values);
    values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (values.len() as f64 - 1.0)
}

pub fn mean_stderr(values: &[f64]) -> f64 {
    (sample_variance(values) / values.len() as f64).sqrt()
}

/// Sample skewness `m_3 / m_2^{3/2}` with population moments.
pub fn skewness(values: &[f64]) -> f64 {
    let mu = mean(values);
    let m = values.len() as f64;
    let m2 = values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / m;
    let m3 = values.iter().map(|v| (v - mu).powi(3)).sum::<f64>() / m;
    m3 / m2.powf(1.5)
}

/// Delete-one jackknife standard error of the unbiased sample variance.
pub fn variance_jackknife_stderr(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 3 {
        return f64::NAN;
    }
    let nf = n as f64;
    let mu = mean(values);
    let ss: f64 = values.iter().map(|v| (v - mu).powi(2)).sum();
    let loo: Vec<f64> = values
        .iter()
        .map(|v| (ss - (v - mu).powi(2) * nf / (nf - 1.0)) / (nf - 2.0))
        .collect();
    let loo_mean = mean(&loo);
    let spread: f64 = loo.iter().map(|v| (v - loo_mean).powi(2)).sum();
    ((nf - 1.0) / nf * spread).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_laws() {
        let f = fit_power_law(&[(10.0, 1e-3), (100.0, 1e-6), (1000.0, 1e-9)]).unwrap();
        assert!((f.slope + 3.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        let flat = fit_power_law(&[(1.0, 2.0), (2.0, 2.0), (4.0, 2.0)]).unwrap();
        assert_eq!(flat.slope, 0.0);
        assert_eq!(flat.r_squared, 1.0);
        let pts: Vec<(f64, f64)> = [32.0, 64.0, 128.0, 256.0, 512.0, 1024.0f64]
            .iter()
            .map(|&n| (n, n.powi(-5)))
            .collect();
        let f = fit_power_law(&pts).unwrap();
        assert!((f.slope + 5.0).abs() < 1e-12);
        assert_relative_eq!(f.predict(100.0), 1e-10, max_relative = 1e-10);
    }

    #[test]
    fn fit_contract() {
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn noisy_fit_has_stderr() {
        let f = fit_power_law(&[(1.0, 1.0), (2.0, 0.3), (4.0, 0.05), (8.0, 0.02)]).unwrap();
        assert!(f.slope_stderr > 0.0);
        assert!((0.0..=1.0).contains(&f.r_squared));
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!(normal_cdf(8.0) >= 1.0 - 1e-14);
        assert!((normal_cdf(1.959964) - 0.975).abs() < 2e-6);
        for x in [0.1, 0.7, 1.3, 2.9, 5.0] {
            assert!((normal_cdf(-x) - (1.0 - normal_cdf(x))).abs() < 1e-16);
        }
    }

    #[test]
    fn kolmogorov_examples() {
        assert_eq!(kolmogorov_distance(&[0.0], normal_cdf).unwrap(), 0.5);
        assert!(kolmogorov_distance(&[], normal_cdf).is_err());
        let d = kolmogorov_distance(&[-1.0, 1.0], normal_cdf).unwrap();
        // Φ(1) − 1/2
        assert!((d - 0.341345).abs() < 2e-6);
    }

    #[test]
    fn compensation() {
        let v = vec![0.1; 1_000_000];
        assert_eq!(compensated_sum(v.iter().copied()), 100_000.0);
        assert_eq!(compensated_sum([1e16, 1.0, -1e16]), 1.0);
    }

    #[test]
    fn moments() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&v), 2.5);
        assert_relative_eq!(sample_variance(&v), 5.0 / 3.0, max_relative = 1e-15);
        assert_eq!(skewness(&v), 0.0);
        assert!(variance_jackknife_stderr(&v) > 0.0);
    }

    #[test]
    fn jackknife_matches_brute_force() {
        let v = [0.3, 1.7, -0.4, 2.2, 0.9, 1.1, -1.3];
        let n = v.len();
        let loo: Vec<f64> = (0..n)
            .map(|i| {
                let rest: Vec<f64> = v.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect();
                sample_variance(&rest)
            })
            .collect();
        let lm = mean(&loo);
        let brute = ((n as f64 - 1.0) / n as f64 * loo.iter().map(|x| (x - lm).powi(2)).sum::<f64>()).sqrt();
        assert_relative_eq!(variance_jackknife_stderr(&v), brute, max_relative = 1e-12);
    }
}
