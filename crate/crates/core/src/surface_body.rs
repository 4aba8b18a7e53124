//! Caps, wet parts and surface bodies of the unit ball.
//!
//! For `B^d` both the `s`-level sets (surface bodies) and the `v`-level sets
//! (floating bodies) are concentric balls, so everything reduces to the
//! one-parameter family of caps `{x ∈ B^d : <x, e> ≥ ρ}`. Integrals are taken
//! in the polar angle `θ = arccos ρ`, which keeps the integrands smooth at both
//! ends.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};
use crate::geometry::{gamma_half, kappa};
use crate::hull::{contains_point, Polytope};
use crate::quadrature::adaptive_simpson;
use crate::stats::{fit_power_law, FitResult};
use crate::vector::Vector;

/// The cap of the unit ball cut off by the hyperplane at signed distance `rho`
/// from the centre. Its height is `1 − rho`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapSpec {
    dim: usize,
    rho: f64,
}

impl CapSpec {
    pub fn new(dim: usize, rho: f64) -> Result<Self> {
        if dim < 2 {
            return Err(contract(format!("cap dimension {dim} < 2")));
        }
        if !(-1.0..=1.0).contains(&rho) {
            return Err(contract(format!("rho={rho} outside [-1, 1]")));
        }
        Ok(Self { dim, rho })
    }

    pub fn from_height(dim: usize, h: f64) -> Result<Self> {
        Self::new(dim, 1.0 - h)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn height(&self) -> f64 {
        1.0 - self.rho
    }
}

/// `∫_0^π sin^{d-2}θ dθ`
fn full_angular_integral(d: usize) -> f64 {
    PI.sqrt() * gamma_half(d - 1) / gamma_half(d)
}

fn angular_measure(d: usize, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    let k = (d - 2) as i32;
    // Scale the tolerance with the expected size so tiny caps keep relative accuracy.
    let scale = (theta.powi(k + 1) / (k + 1) as f64).min(1.0);
    let integral = adaptive_simpson(|t: f64| t.sin().powi(k), 0.0, theta, 1e-13 * scale);
    (integral / full_angular_integral(d)).clamp(0.0, 1.0)
}

fn angular_volume(d: usize, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    let k = d as i32;
    let scale = (theta.powi(k + 1) / (k + 1) as f64).min(1.0);
    kappa(d - 1) * adaptive_simpson(|t: f64| t.sin().powi(k), 0.0, theta, 1e-13 * scale)
}

/// Normalized boundary measure of the cap, `σ({u : <u, e> ≥ rho}) / σ(S^{d-1})`.
pub fn boundary_cap_measure(c: &CapSpec) -> f64 {
    angular_measure(c.dim, c.rho.acos())
}

/// d-volume of the cap: `∫_rho^1 κ_{d-1} (1 − t²)^{(d-1)/2} dt`.
pub fn cap_volume(c: &CapSpec) -> f64 {
    angular_volume(c.dim, c.rho.acos())
}

/// Smallest polar angle in `[0, π/2]` at which the increasing `f` reaches `target`.
fn invert_angle(f: impl Fn(f64) -> f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, PI / 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Radius of the surface body `B^d(s ≥ t)`, i.e. the `rho` whose cap has
/// normalized boundary measure `t`.
pub fn surface_body_radius(t: f64, d: usize) -> Result<f64> {
    if !(0.0..=0.5).contains(&t) {
        return Err(contract(format!("surface-body parameter t={t} outside [0, 1/2]")));
    }
    if d < 2 {
        return Err(contract(format!("dimension {d} < 2")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if t == 0.5 {
        return Ok(0.0);
    }
    Ok(invert_angle(|theta| angular_measure(d, theta), t).cos())
}

/// `rho` of the cap of the unit ball with volume `eps`.
pub fn cap_rho_for_volume(eps: f64, d: usize) -> Result<f64> {
    let half = 0.5 * kappa(d);
    if !(eps > 0.0 && eps <= half) {
        return Err(contract(format!("cap volume {eps} outside (0, κ_d/2]")));
    }
    Ok(invert_angle(|theta| angular_volume(d, theta), eps).cos())
}

/// `c_alpha · ln n / n`, capped at `1/2`.
pub fn tau_threshold(n: f64, c_alpha: f64) -> f64 {
    debug_assert!(n >= 2.0 && c_alpha > 0.0);
    (c_alpha * n.ln() / n).min(0.5)
}

/// Whether the centred ball of the given radius lies inside `p`.
pub fn contains_centered_ball(p: &Polytope, radius: f64) -> bool {
    let origin = Vector::zeros(p.dim());
    let tol = p.tolerance();
    contains_point(p, &origin) && p.facets().iter().all(|f| f.offset >= radius - tol)
}

/// Whether `B^d(s ≥ t) ⊆ p` for a polytope inscribed in the unit ball.
pub fn contains_surface_body(p: &Polytope, t: f64) -> Result<bool> {
    Ok(contains_centered_ball(p, surface_body_radius(t, p.dim())?))
}

/// Which cap relation to probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapDirection {
    /// Boundary measure of the ε-cap (volume ε); exponent `(d−1)/(d+1)`.
    BoundaryOfVolumeCap,
    /// Volume of the ε-boundary cap; exponent `(d+1)/(d−1)`.
    VolumeOfBoundaryCap,
}

impl CapDirection {
    pub fn expected_exponent(self, d: usize) -> f64 {
        let (a, b) = ((d - 1) as f64, (d + 1) as f64);
        match self {
            CapDirection::BoundaryOfVolumeCap => a / b,
            CapDirection::VolumeOfBoundaryCap => b / a,
        }
    }
}

/// Log-log slope of the cap relation over `eps_grid` for the unit ball.
pub fn cap_exponent_check(d: usize, eps_grid: &[f64], direction: CapDirection) -> Result<FitResult> {
    let points = eps_grid
        .iter()
        .map(|&eps| {
            let y = match direction {
                CapDirection::BoundaryOfVolumeCap => {
                    boundary_cap_measure(&CapSpec::new(d, cap_rho_for_volume(eps, d)?)?)
                }
                CapDirection::VolumeOfBoundaryCap => {
                    cap_volume(&CapSpec::new(d, surface_body_radius(eps, d)?)?)
                }
            };
            Ok((eps, y))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_power_law(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;

    #[test]
    fn hemisphere_is_half() {
        for d in 2..=6 {
            let m = boundary_cap_measure(&CapSpec::new(d, 0.0).unwrap());
            assert!((m - 0.5).abs() < 1e-12, "d={d}: {m}");
        }
    }

    #[test]
    fn circle_arcs() {
        let m = boundary_cap_measure(&CapSpec::new(2, (0.3 * PI).cos()).unwrap());
        assert!((m - 0.3).abs() < 1e-12);
    }

    #[test]
    fn archimedes() {
        let m = boundary_cap_measure(&CapSpec::new(3, 0.4).unwrap());
        assert!((m - 0.3).abs() < 1e-12);
    }

    #[test]
    fn cap_volumes() {
        for d in 2..=6 {
            let whole = cap_volume(&CapSpec::new(d, -1.0).unwrap());
            assert!((whole - kappa(d)).abs() < 1e-11, "d={d}");
        }
        let half = cap_volume(&CapSpec::new(3, 0.0).unwrap());
        assert!((half - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complementary_caps() {
        for d in 2..=6 {
            for rho in [0.1, 0.5, 0.93] {
                let sum = cap_volume(&CapSpec::new(d, rho).unwrap()) + cap_volume(&CapSpec::new(d, -rho).unwrap());
                assert!((sum - kappa(d)).abs() < 1e-10, "d={d} rho={rho}");
            }
        }
    }

    #[test]
    fn radius_identities() {
        assert_eq!(surface_body_radius(0.5, 4).unwrap(), 0.0);
        assert!((surface_body_radius(0.25, 2).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);
        assert!((surface_body_radius(0.1, 3).unwrap() - 0.8).abs() < 1e-10);
        assert!(surface_body_radius(0.6, 3).is_err());
        assert!(surface_body_radius(-0.1, 3).is_err());
    }

    #[test]
    fn radius_inverts_measure() {
        for d in 2..=6 {
            for t in [0.01, 0.1, 0.25, 0.5] {
                let rho = surface_body_radius(t, d).unwrap();
                let m = boundary_cap_measure(&CapSpec::new(d, rho).unwrap());
                assert!((m - t).abs() < 1e-10, "d={d} t={t}: {m}");
            }
        }
    }

    #[test]
    fn tau_values() {
        assert!((tau_threshold(100.0, 1.0) - 0.046_051_701_859_880_92).abs() < 1e-15);
        let e2 = std::f64::consts::E.powi(2);
        assert!((tau_threshold(e2, 1.0) - 2.0 / e2).abs() < 1e-15);
        assert_eq!(tau_threshold(10.0, 1e6), 0.5);
    }

    fn square() -> Polytope {
        let pts = [
            Vector::from_slice(&[1.0, 0.0]),
            Vector::from_slice(&[0.0, 1.0]),
            Vector::from_slice(&[-1.0, 0.0]),
            Vector::from_slice(&[0.0, -1.0]),
        ];
        convex_hull(&pts, 2).unwrap()
    }

    #[test]
    fn inscribed_square() {
        let sq = square();
        assert!(contains_surface_body(&sq, 0.25).unwrap());
        assert!(!contains_surface_body(&sq, 0.1).unwrap());
        assert!(contains_surface_body(&sq, 0.5).unwrap());
    }

    #[test]
    fn origin_outside() {
        let pts: Vec<Vector> = [0.0f64, 0.05, 0.1]
            .iter()
            .map(|t| Vector::from_slice(&[t.cos(), t.sin()]))
            .collect();
        let p = convex_hull(&pts, 2).unwrap();
        assert!(!contains_surface_body(&p, 0.5).unwrap());
        assert!(!contains_surface_body(&p, 0.01).unwrap());
    }

    #[test]
    fn cap_exponents() {
        let grid: Vec<f64> = (0..7).map(|i| 10f64.powf(-6.0 + 0.5 * i as f64)).collect();
        for d in [2, 3] {
            for dir in [CapDirection::BoundaryOfVolumeCap, CapDirection::VolumeOfBoundaryCap] {
                let fit = cap_exponent_check(d, &grid, dir).unwrap();
                assert!((fit.slope - dir.expected_exponent(d)).abs() < 0.02, "d={d} {dir:?}: {}", fit.slope);
            }
        }
    }
}
