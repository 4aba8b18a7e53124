//! Intrinsic volumes of polytopes.
//!
//! Exact paths exist for `V_d` (volume), `V_{d-1}` (half the surface area) and
//! `V_1` in dimension three (edge lengths weighted by exterior dihedral angles).
//! Every other index goes through Kubota's projection formula
//!
//! ```text
//! V_ℓ(K) = C(d,ℓ) κ_d / (κ_ℓ κ_{d-ℓ}) · ∫ vol_ℓ(K|L) ν_ℓ(dL)
//! ```
//!
//! with the Grassmannian average replaced by a fixed panel of Haar-random
//! subspaces. Reusing one panel turns the estimate into a deterministic
//! valuation, which is what the experiments need.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{contract, Error, Result};
use crate::geometry::{binomial, kappa, ConvexBody};
use crate::hull::{convex_hull, segment, Polytope};
use crate::linalg::{determinant, orthonormalize, simplex_volume};
use crate::rng::RngStream;
use crate::stats::compensated_sum;
use crate::vector::{Vector, MAX_DIM};

/// An ℓ-dimensional linear subspace of ℝ^d given by an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim_ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Span of the given vectors, orthonormalized.
    pub fn from_spanning(vectors: &[Vector]) -> Result<Self> {
        let dim_ambient = vectors
            .first()
            .ok_or_else(|| contract("empty spanning set"))?
            .dim();
        if vectors.len() > dim_ambient || vectors.iter().any(|v| v.dim() != dim_ambient) {
            return Err(contract("spanning vectors must share the ambient dimension"));
        }
        let basis = orthonormalize(vectors).ok_or_else(|| contract("spanning vectors are dependent"))?;
        Ok(Self { dim_ambient, basis })
    }

    /// `span{e_0, …, e_{ell-1}}`.
    pub fn coordinate(d: usize, ell: usize) -> Self {
        Self {
            dim_ambient: d,
            basis: (0..ell).map(|i| Vector::unit(d, i)).collect(),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of the orthogonal projection of `x` in this basis.
    pub fn coordinates(&self, x: &Vector) -> Vector {
        let mut c = Vector::zeros(self.dim());
        for (ci, b) in c.iter_mut().zip(&self.basis) {
            *ci = b.dot(x);
        }
        c
    }

    /// Largest deviation of the basis Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dot(b) - target).abs());
            }
        }
        worst
    }
}

/// Haar-distributed ℓ-subspace: orthonormalized standard Gaussian vectors.
pub fn sample_grassmannian(d: usize, ell: usize, rng: &mut RngStream) -> Subspace {
    assert!((1..=d).contains(&ell) && d <= MAX_DIM, "need 1 <= ell <= d <= {MAX_DIM}");
    loop {
        let raw: Vec<Vector> = (0..ell)
            .map(|_| {
                let mut v = Vector::zeros(d);
                for x in v.iter_mut() {
                    *x = rng.sample(StandardNormal);
                }
                v
            })
            .collect();
        if let Some(basis) = orthonormalize(&raw) {
            return Subspace {
                dim_ambient: d,
                basis,
            };
        }
    }
}

/// Angle between the unit vector `z` and the subspace `L`, in `[0, π/2]`.
pub fn subspace_angle(z: &Vector, l: &Subspace) -> f64 {
    let c = l.coordinates(z).norm().clamp(0.0, 1.0);
    c.acos()
}

/// A reproducible finite sample of the Grassmannian.
#[derive(Clone, Debug)]
pub struct ProjectionPanel {
    dim_ambient: usize,
    dim: usize,
    seed: u64,
    subspaces: Vec<Subspace>,
}

impl ProjectionPanel {
    /// `size` Haar subspaces; subspace `j` comes from stream `(seed, j)`.
    pub fn generate(d: usize, ell: usize, size: usize, seed: u64) -> Self {
        let subspaces = (0..size)
            .into_par_iter()
            .map(|j| sample_grassmannian(d, ell, &mut RngStream::new(seed, j as u64)))
            .collect();
        Self {
            dim_ambient: d,
            dim: ell,
            seed,
            subspaces,
        }
    }

    /// `size` copies of `span{e_0, …, e_{ell-1}}`.
    pub fn coordinate(d: usize, ell: usize, size: usize) -> Self {
        Self {
            dim_ambient: d,
            dim: ell,
            seed: 0,
            subspaces: vec![Subspace::coordinate(d, ell); size],
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
}

/// d-dimensional volume: `Σ_f (1/d) · h_f · vol_{d-1}(f)`, heights measured
/// from the interior point.
pub fn volume(p: &Polytope) -> f64 {
    let d = p.dim() as f64;
    let c = p.interior_point();
    let verts = p.vertices();
    p.simplices()
        .iter()
        .map(|s| {
            let facet = &p.facets()[s.facet];
            let height = facet.offset - facet.normal.dot(c);
            let refs: Vec<&Vector> = s.vertex_ids.iter().map(|&i| &verts[i]).collect();
            height * simplex_volume(&refs) / d
        })
        .sum()
}

/// Half the (d−1)-dimensional boundary measure.
pub fn surface_area_half(p: &Polytope) -> f64 {
    let verts = p.vertices();
    0.5 * p
        .simplices()
        .iter()
        .map(|s| {
            let refs: Vec<&Vector> = s.vertex_ids.iter().map(|&i| &verts[i]).collect();
            simplex_volume(&refs)
        })
        .sum::<f64>()
}

/// Orthogonal projection onto `l`, expressed in `l`'s basis coordinates.
pub fn project(p: &Polytope, l: &Subspace) -> Result<Polytope> {
    if l.dim_ambient() != p.dim() {
        return Err(contract(format!(
            "subspace lives in dimension {}, polytope in {}",
            l.dim_ambient(),
            p.dim()
        )));
    }
    let coords: Vec<Vector> = p.vertices().iter().map(|v| l.coordinates(v)).collect();
    if l.dim() == 1 {
        let (lo, hi) = coords
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c[0]), hi.max(c[0])));
        if hi - lo <= crate::hull::REL_TOL * p.scale() {
            return Err(Error::Degenerate { subset_size: 1 });
        }
        return Ok(segment(lo, hi, p.scale()));
    }
    convex_hull(&coords, l.dim())
}

/// `C(d,ℓ) κ_d / (κ_ℓ κ_{d-ℓ})`.
pub fn kubota_prefactor(d: usize, ell: usize) -> f64 {
    binomial(d, ell) * kappa(d) / (kappa(ell) * kappa(d - ell))
}

fn check_panel(d: usize, ell: usize, panel: &ProjectionPanel) -> Result<()> {
    if panel.dim_ambient() != d || panel.dim() != ell {
        return Err(contract(format!(
            "panel is G({}, {}), expected G({d}, {ell})",
            panel.dim_ambient(),
            panel.dim()
        )));
    }
    if panel.len() < 2 {
        return Err(contract("panel needs at least two subspaces"));
    }
    Ok(())
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let m = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / m;
    let var = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean))) / (m - 1.0);
    (mean, (var / m).sqrt())
}

/// Panel average of projection volumes, scaled by the Kubota prefactor.
/// Returns `(estimate, standard error)`. Degenerate projections count as zero.
pub fn kubota_estimate(p: &Polytope, ell: usize, panel: &ProjectionPanel) -> Result<(f64, f64)> {
    let d = p.dim();
    check_panel(d, ell, panel)?;
    let volumes: Vec<f64> = panel
        .subspaces()
        .par_iter()
        .map(|l| match project(p, l) {
            Ok(q) => Ok(volume(&q)),
            Err(Error::Degenerate { .. }) => Ok(0.0),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let (mean, se) = mean_and_stderr(&volumes);
    let k = kubota_prefactor(d, ell);
    Ok((k * mean, k * se))
}

/// Kubota estimate for a smooth body, using the exact projected volume of an
/// ellipsoid: `vol_ℓ(A B^d | L) = κ_ℓ sqrt(det(Uᵀ A² U))` for an orthonormal
/// basis matrix `U` of `L`.
pub fn kubota_estimate_body(body: &ConvexBody, ell: usize, panel: &ProjectionPanel) -> Result<(f64, f64)> {
    let d = body.dim();
    check_panel(d, ell, panel)?;
    let a2: Vec<f64> = body.semiaxes().iter().map(|a| a * a).collect();
    let volumes: Vec<f64> = panel
        .subspaces()
        .iter()
        .map(|l| {
            let mut gram = [[0.0; MAX_DIM]; MAX_DIM];
            for (i, bi) in l.basis().iter().enumerate() {
                for (j, bj) in l.basis().iter().enumerate() {
                    gram[i][j] = (0..d).map(|k| bi[k] * a2[k] * bj[k]).sum();
                }
            }
            kappa(ell) * determinant(gram, ell).max(0.0).sqrt()
        })
        .collect();
    let (mean, se) = mean_and_stderr(&volumes);
    let k = kubota_prefactor(d, ell);
    Ok((k * mean, k * se))
}

/// Exact `V_1` of a 3-polytope: `(1/2π) Σ_edges length · exterior angle`.
pub fn mean_width_v1_d3(p: &Polytope) -> Result<f64> {
    if p.dim() != 3 {
        return Err(contract(format!("mean width path needs d=3, got {}", p.dim())));
    }
    let verts = p.vertices();
    let facets = p.facets();
    let total: f64 = p
        .ridges()
        .iter()
        .map(|r| {
            // Collinear vertices may split an edge; its length is the diameter.
            let mut length = 0.0f64;
            for (i, &a) in r.vertex_ids.iter().enumerate() {
                for &b in &r.vertex_ids[i + 1..] {
                    length = length.max((verts[a] - verts[b]).norm());
                }
            }
            let cos = facets[r.facets.0].normal.dot(&facets[r.facets.1].normal);
            length * cos.clamp(-1.0, 1.0).acos()
        })
        .sum();
    Ok(total / (2.0 * PI))
}

/// Whether `V_ℓ` has an estimator-free path in dimension `d`.
pub fn has_exact_path(d: usize, ell: usize) -> bool {
    ell == d || ell + 1 == d || (ell == 1 && d == 3)
}

/// `V_ℓ(p)`, exact where possible and otherwise the Kubota panel estimate.
pub fn intrinsic_volume(p: &Polytope, ell: usize, panel: Option<&ProjectionPanel>) -> Result<f64> {
    let d = p.dim();
    if ell == 0 || ell > d {
        return Err(contract(format!("ell={ell} outside 1..={d}")));
    }
    if ell == d {
        Ok(volume(p))
    } else if ell + 1 == d {
        Ok(surface_area_half(p))
    } else if ell == 1 && d == 3 {
        mean_width_v1_d3(p)
    } else {
        let panel = panel.ok_or(Error::MissingPanel { dim: d, ell })?;
        Ok(kubota_estimate(p, ell, panel)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cube(d: usize, s: f64) -> Polytope {
        let pts: Vec<Vector> = (0..1usize << d)
            .map(|mask| {
                let c: Vec<f64> = (0..d).map(|i| s * ((mask >> i) & 1) as f64).collect();
                Vector::from_slice(&c)
            })
            .collect();
        convex_hull(&pts, d).unwrap()
    }

    fn unit_simplex(d: usize) -> Polytope {
        let mut pts = vec![Vector::zeros(d)];
        pts.extend((0..d).map(|i| Vector::unit(d, i)));
        convex_hull(&pts, d).unwrap()
    }

    #[test]
    fn simplex_volumes() {
        let mut fact = 1.0;
        for d in 2..=6 {
            fact *= d as f64;
            assert_relative_eq!(volume(&unit_simplex(d)), 1.0 / fact, max_relative = 1e-12);
        }
    }

    #[test]
    fn cube_volume_and_surface() {
        assert_relative_eq!(volume(&cube(3, 1.0)), 1.0, max_relative = 1e-14);
        assert_relative_eq!(volume(&cube(3, 2.5)), 2.5f64.powi(3), max_relative = 1e-13);
        assert_relative_eq!(surface_area_half(&cube(3, 1.0)), 3.0, max_relative = 1e-14);
    }

    #[test]
    fn triangle_half_perimeter() {
        let pts = [
            Vector::from_slice(&[0.0, 0.0]),
            Vector::from_slice(&[1.0, 0.0]),
            Vector::from_slice(&[0.0, 1.0]),
        ];
        let p = convex_hull(&pts, 2).unwrap();
        assert_relative_eq!(surface_area_half(&p), (2.0 + 2f64.sqrt()) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn regular_tetrahedron_surface() {
        let s = 1.0 / 2f64.sqrt();
        let pts = [
            Vector::from_slice(&[s, 0.0, 0.0]),
            Vector::from_slice(&[0.0, s, 0.0]),
            Vector::from_slice(&[0.0, 0.0, s]),
            Vector::from_slice(&[s, s, s]),
        ];
        let p = convex_hull(&pts, 3).unwrap();
        assert_relative_eq!(surface_area_half(&p), 3f64.sqrt() / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn cube_mean_width() {
        assert_relative_eq!(mean_width_v1_d3(&cube(3, 1.0)).unwrap(), 3.0, max_relative = 1e-14);
        assert_relative_eq!(mean_width_v1_d3(&cube(3, 0.7)).unwrap(), 2.1, max_relative = 1e-13);
        assert!(mean_width_v1_d3(&cube(2, 1.0)).is_err());
    }

    #[test]
    fn prefactors() {
        assert_relative_eq!(kubota_prefactor(3, 2), 2.0, max_relative = 1e-15);
        for d in 2..=6 {
            assert_relative_eq!(kubota_prefactor(d, d), 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn coordinate_panel_reproduces_volume() {
        let p = unit_simplex(3);
        let panel = ProjectionPanel::coordinate(3, 3, 4);
        let (est, se) = kubota_estimate(&p, 3, &panel).unwrap();
        assert_relative_eq!(est, volume(&p), max_relative = 1e-12);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn projections() {
        let q = project(&cube(3, 1.0), &Subspace::coordinate(3, 2)).unwrap();
        assert_eq!(q.vertices().len(), 4);
        assert_relative_eq!(volume(&q), 1.0, max_relative = 1e-14);
        let seg = project(&unit_simplex(3), &Subspace::coordinate(3, 1)).unwrap();
        assert_eq!(seg.vertices()[0][0], 0.0);
        assert_eq!(seg.vertices()[1][0], 1.0);
        assert_relative_eq!(volume(&seg), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn angles() {
        let e1 = Vector::unit(3, 0);
        let l1 = Subspace::coordinate(3, 1);
        let l2 = Subspace::from_spanning(&[Vector::unit(3, 1)]).unwrap();
        assert_eq!(subspace_angle(&e1, &l1), 0.0);
        assert_relative_eq!(subspace_angle(&e1, &l2), PI / 2.0, max_relative = 1e-15);
        let diag = Vector::from_slice(&[1.0, 1.0, 0.0]).normalized();
        assert_relative_eq!(subspace_angle(&diag, &l1), PI / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn grassmannian_is_orthonormal() {
        let mut rng = RngStream::new(5, 0);
        for _ in 0..50 {
            let l = sample_grassmannian(4, 2, &mut rng);
            assert!(l.orthonormality_residual() < 1e-10);
        }
        let full = sample_grassmannian(3, 3, &mut rng);
        let mut m = [[0.0; MAX_DIM]; MAX_DIM];
        for (i, b) in full.basis().iter().enumerate() {
            m[i][..3].copy_from_slice(b);
        }
        assert!((determinant(m, 3).abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn panel_is_reproducible() {
        let a = ProjectionPanel::generate(4, 2, 10, 99);
        let b = ProjectionPanel::generate(4, 2, 10, 99);
        for (x, y) in a.subspaces().iter().zip(b.subspaces()) {
            assert_eq!(x.basis(), y.basis());
        }
    }

    #[test]
    fn dispatcher() {
        let c = cube(3, 1.0);
        assert_relative_eq!(intrinsic_volume(&c, 3, None).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(intrinsic_volume(&c, 1, None).unwrap(), 3.0, max_relative = 1e-14);
        let c4 = cube(4, 1.0);
        assert!(matches!(intrinsic_volume(&c4, 2, None), Err(Error::MissingPanel { .. })));
        assert!(intrinsic_volume(&c4, 0, None).is_err());
        let wrong = ProjectionPanel::generate(3, 2, 4, 1);
        assert!(intrinsic_volume(&c4, 2, Some(&wrong)).is_err());
    }

    #[test]
    fn body_kubota_is_exact_for_balls() {
        let ball = ConvexBody::ball(3, 1.3).unwrap();
        for ell in 1..=3 {
            let panel = ProjectionPanel::generate(3, ell, 16, 3);
            let (est, se) = kubota_estimate_body(&ball, ell, &panel).unwrap();
            let exact = crate::geometry::reference_intrinsic_volume(&ball, ell).unwrap();
            assert_relative_eq!(est, exact, max_relative = 1e-12);
            assert!(se < 1e-12);
        }
    }
}
