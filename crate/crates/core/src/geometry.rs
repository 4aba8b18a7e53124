//! Smooth convex bodies: support functions, reference intrinsic volumes and
//! uniform sampling from the normalized boundary measure.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::rng::RngStream;
use crate::vector::{Vector, MAX_DIM};

/// Smallest supported ambient dimension.
pub const MIN_DIM: usize = 2;

const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Ball,
    Ellipsoid,
}

impl BodyKind {
    pub fn name(self) -> &'static str {
        match self {
            BodyKind::Ball => "ball",
            BodyKind::Ellipsoid => "ellipsoid",
        }
    }
}

/// A centred ball or axis-aligned ellipsoid in ℝ^d, `2 <= d <= 6`.
///
/// Both have C² boundaries with strictly positive Gaussian curvature as long as
/// every semiaxis is positive, which construction enforces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    semiaxes: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct BodyRepr {
    kind: BodyKind,
    dim: usize,
    semiaxes: Vec<f64>,
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = Error;
    fn try_from(r: BodyRepr) -> Result<Self> {
        ConvexBody::new(r.kind, r.dim, r.semiaxes)
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(b: ConvexBody) -> Self {
        BodyRepr {
            kind: b.kind,
            dim: b.dim,
            semiaxes: b.semiaxes,
        }
    }
}

impl ConvexBody {
    pub fn new(kind: BodyKind, dim: usize, semiaxes: Vec<f64>) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::Config(format!(
                "dimension {dim} outside {MIN_DIM}..={MAX_DIM}"
            )));
        }
        if semiaxes.len() != dim {
            return Err(Error::Config(format!(
                "expected {dim} semiaxes, got {}",
                semiaxes.len()
            )));
        }
        if semiaxes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::Config("semiaxes must be finite and positive".into()));
        }
        if kind == BodyKind::Ball && semiaxes.iter().any(|a| *a != semiaxes[0]) {
            return Err(Error::Config("ball semiaxes must all be equal".into()));
        }
        Ok(Self {
            kind,
            dim,
            semiaxes,
        })
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        Self::new(BodyKind::Ball, dim, vec![radius; dim])
    }

    pub fn unit_ball(dim: usize) -> Result<Self> {
        Self::ball(dim, 1.0)
    }

    pub fn ellipsoid(semiaxes: &[f64]) -> Result<Self> {
        Self::new(BodyKind::Ellipsoid, semiaxes.len(), semiaxes.to_vec())
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn semiaxes(&self) -> &[f64] {
        &self.semiaxes
    }

    pub fn min_semiaxis(&self) -> f64 {
        self.semiaxes.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_semiaxis(&self) -> f64 {
        self.semiaxes.iter().copied().fold(0.0, f64::max)
    }

    /// True for a ball of radius one centred at the origin.
    pub fn is_unit_ball(&self) -> bool {
        self.kind == BodyKind::Ball && self.semiaxes[0] == 1.0
    }

    /// Whether `x` lies on the boundary within `tol` in the normalized
    /// quadratic form `Σ (x_i/a_i)^2 = 1`.
    pub fn on_boundary(&self, x: &Vector, tol: f64) -> bool {
        (self.boundary_form(x) - 1.0).abs() < tol
    }

    pub fn boundary_form(&self, x: &Vector) -> f64 {
        x.iter()
            .zip(&self.semiaxes)
            .map(|(xi, a)| (xi / a) * (xi / a))
            .sum()
    }
}

/// Volume of the unit ball in ℝ^d.
///
/// Uses `κ_0 = 1`, `κ_1 = 2`, `κ_d = 2π/d · κ_{d-2}`.
pub fn kappa(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / d as f64 * kappa(d - 2),
    }
}

/// `Γ(k/2)` for positive integer `k`, by the half-integer recurrence.
pub fn gamma_half(k: usize) -> f64 {
    assert!(k > 0, "Γ(0) is undefined");
    match k {
        1 => PI.sqrt(),
        2 => 1.0,
        _ => (k as f64 / 2.0 - 1.0) * gamma_half(k - 2),
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `h_K(u) = sup{<x,u> : x ∈ K}` for a unit direction `u`.
pub fn support_function(body: &ConvexBody, u: &Vector) -> Result<f64> {
    if u.dim() != body.dim {
        return Err(contract(format!(
            "direction has dimension {}, body has {}",
            u.dim(),
            body.dim
        )));
    }
    if (u.norm() - 1.0).abs() > UNIT_TOL {
        return Err(contract(format!("direction norm {} is not 1", u.norm())));
    }
    Ok(u
        .iter()
        .zip(&body.semiaxes)
        .map(|(ui, a)| a * a * ui * ui)
        .sum::<f64>()
        .sqrt())
}

/// Uniform point on the unit sphere `S^{d-1}` via normalized Gaussians.
pub fn sample_sphere(d: usize, rng: &mut RngStream) -> Vector {
    loop {
        let mut v = Vector::zeros(d);
        for x in v.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let r2 = v.norm_squared();
        if r2 > 1e-200 {
            return v * (1.0 / r2.sqrt());
        }
    }
}

/// Point drawn from the normalized (d-1)-Hausdorff measure on `∂K`.
///
/// For an ellipsoid `x = a∘u` with `u` uniform on the sphere has density
/// proportional to `Π a_i · ‖u/a‖` relative to the uniform boundary law; the
/// candidate is accepted with probability `a_min ‖u/a‖ ≤ 1`.
pub fn sample_boundary(body: &ConvexBody, rng: &mut RngStream) -> Vector {
    let d = body.dim;
    match body.kind {
        BodyKind::Ball => sample_sphere(d, rng) * body.semiaxes[0],
        BodyKind::Ellipsoid => {
            let a_min = body.min_semiaxis();
            loop {
                let u = sample_sphere(d, rng);
                let density = u
                    .iter()
                    .zip(&body.semiaxes)
                    .map(|(ui, a)| (ui / a) * (ui / a))
                    .sum::<f64>()
                    .sqrt();
                let accept: f64 = rng.random();
                if accept < a_min * density {
                    let mut x = u;
                    for (xi, a) in x.iter_mut().zip(&body.semiaxes) {
                        *xi *= a;
                    }
                    return x;
                }
            }
        }
    }
}

/// Exact (or quadrature-exact) `V_ℓ(K)` where available.
///
/// Balls are handled for every `ℓ` through Kubota's formula. Ellipsoids support
/// `ℓ = d` (closed form) and `ℓ = d − 1` (half the surface area, one-dimensional
/// quadrature to roughly 1e-10 relative accuracy).
pub fn reference_intrinsic_volume(body: &ConvexBody, ell: usize) -> Result<f64> {
    let d = body.dim;
    if ell == 0 || ell > d {
        return Err(contract(format!("ell={ell} outside 1..={d}")));
    }
    match body.kind {
        BodyKind::Ball => {
            let r = body.semiaxes[0];
            Ok(binomial(d, ell) * kappa(d) / kappa(d - ell) * r.powi(ell as i32))
        }
        BodyKind::Ellipsoid if ell == d => Ok(kappa(d) * body.semiaxes.iter().product::<f64>()),
        BodyKind::Ellipsoid if ell == d - 1 => Ok(0.5 * ellipsoid_surface_area(&body.semiaxes)),
        BodyKind::Ellipsoid => Err(Error::UnsupportedReference {
            body: body.kind.name(),
            dim: d,
            ell,
        }),
    }
}

/// Surface area of the ellipsoid with the given semiaxes.
///
/// With `x = A u` on the unit sphere, `dS = det A · ‖A⁻¹u‖ dσ(u)`, so the area is
/// `det A · |S^{d-1}| · E‖A⁻¹U‖`. Writing `U = G/‖G‖` for a standard Gaussian `G`
/// turns the spherical mean into `E‖A⁻¹G‖ / E‖G‖`, and
/// `E‖BG‖ = (2√π)⁻¹ ∫_0^∞ (1 − Π(1+2s b_i²)^{-1/2}) s^{-3/2} ds`.
/// The substitution `s = tan²θ` gives a smooth integrand on `[0, π/2]`.
pub(crate) fn ellipsoid_surface_area(semiaxes: &[f64]) -> f64 {
    let d = semiaxes.len();
    let inv_sq: Vec<f64> = semiaxes.iter().map(|a| 1.0 / (a * a)).collect();
    let sum_inv_sq: f64 = inv_sq.iter().sum();
    let integrand = |theta: f64| -> f64 {
        if theta <= 0.0 {
            return 2.0 * sum_inv_sq;
        }
        let sin = theta.sin();
        let s = theta.tan().powi(2);
        if !s.is_finite() || s > 1e300 {
            return 2.0;
        }
        let log_p: f64 = inv_sq.iter().map(|b2| (2.0 * s * b2).ln_1p()).sum::<f64>() * -0.5;
        -2.0 * log_p.exp_m1() / (sin * sin)
    };
    let integral = adaptive_simpson(integrand, 0.0, PI / 2.0, 1e-13 * sum_inv_sq.sqrt());
    let mean_norm_gauss = integral / (2.0 * PI.sqrt());
    let mean_gauss_len = 2f64.sqrt() * gamma_half(d + 1) / gamma_half(d);
    let sphere_area = d as f64 * kappa(d);
    semiaxes.iter().product::<f64>() * sphere_area * mean_norm_gauss / mean_gauss_len
}
