//! Convex hulls in dimensions 1 through 6.
//!
//! The hull is built incrementally (beneath–beyond). Each outside point is kept
//! in the conflict list of one facet it sees; inserting a point removes the
//! connected set of facets it sees and cones the horizon ridges to it. Internally
//! every facet is a simplex; coplanar neighbours are merged on output so that,
//! for example, a cube reports six square facets.
//!
//! Orientation tests compare signed distances against `1e-9 · scale`, where
//! `scale` is the largest absolute input coordinate. A point within tolerance
//! of a facet hyperplane counts as beneath it.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::linalg::{hyperplane_normal, orthonormalize};
use crate::vector::{Vector, MAX_DIM};

/// Relative tolerance of all orientation predicates.
pub const REL_TOL: f64 = 1e-9;

/// A (d−1)-face of a polytope.
#[derive(Clone, Debug, Serialize)]
pub struct Facet {
    /// Indices into [`Polytope::vertices`], ascending.
    pub vertex_ids: Vec<usize>,
    /// Outward unit normal.
    pub normal: Vector,
    /// `<normal, x>` for every `x` on the facet.
    pub offset: f64,
}

/// A (d−2)-face together with its two incident facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ridge {
    pub facets: (usize, usize),
    pub vertex_ids: Vec<usize>,
}

/// One simplex of the boundary triangulation.
#[derive(Clone, Debug)]
pub(crate) struct BoundarySimplex {
    pub facet: usize,
    pub vertex_ids: Vec<usize>,
}

/// A full-dimensional convex polytope in facet representation.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    interior_point: Vector,
    scale: f64,
    simplices: Vec<BoundarySimplex>,
    ridges: Vec<Ridge>,
}

#[derive(Serialize)]
struct PolytopeDump<'a> {
    dim: usize,
    vertices: &'a [Vector],
    facets: &'a [Facet],
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points of the input, in input order.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Centroid of the vertices.
    pub fn interior_point(&self) -> &Vector {
        &self.interior_point
    }

    /// Coordinate scale used by the tolerance of the orientation predicates.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn tolerance(&self) -> f64 {
        REL_TOL * self.scale
    }

    pub(crate) fn simplices(&self) -> &[BoundarySimplex] {
        &self.simplices
    }

    /// Ridges between distinct facets; each listed once.
    pub fn ridges(&self) -> &[Ridge] {
        &self.ridges
    }

    /// `{dim, vertices, facets: [{vertex_ids, normal, offset}]}`
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&PolytopeDump {
            dim: self.dim,
            vertices: &self.vertices,
            facets: &self.facets,
        })?)
    }

    /// The polytope with every vertex mapped through `f`; facets are rebuilt.
    pub fn map_vertices(&self, f: impl Fn(&Vector) -> Vector) -> Result<Polytope> {
        let pts: Vec<Vector> = self.vertices.iter().map(f).collect();
        convex_hull(&pts, pts.first().map_or(self.dim, Vector::dim))
    }
}

/// `true` iff `x` lies beneath every facet hyperplane, up to tolerance.
pub fn contains_point(p: &Polytope, x: &Vector) -> bool {
    let tol = p.tolerance();
    p.facets.iter().all(|f| f.normal.dot(x) <= f.offset + tol)
}

/// Every ridge with its two incident facets.
pub fn facet_adjacency(p: &Polytope) -> Result<Vec<Ridge>> {
    let mut count = vec![0usize; p.facets.len()];
    for r in &p.ridges {
        if r.facets.0 == r.facets.1 {
            return Err(Error::Lattice(format!("ridge {:?} joins a facet to itself", r.vertex_ids)));
        }
        count[r.facets.0] += 1;
        count[r.facets.1] += 1;
    }
    if p.dim >= 2 && count.iter().any(|&c| c < p.dim) {
        return Err(Error::Lattice("facet with fewer than d ridges".into()));
    }
    Ok(p.ridges.clone())
}

/// Convex hull of `points` in ℝ^dim.
pub fn convex_hull(points: &[Vector], dim: usize) -> Result<Polytope> {
    if dim == 0 || dim > MAX_DIM {
        return Err(contract(format!("hull dimension {dim} outside 1..={MAX_DIM}")));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != dim || !p.is_finite()) {
        return Err(contract(format!("point {bad:?} is not a finite vector of dimension {dim}")));
    }
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if points.len() <= dim || scale == 0.0 {
        return Err(Error::Degenerate {
            subset_size: points.len().min(1),
        });
    }
    if dim == 1 {
        return segment_hull(points, scale);
    }
    let mut builder = Builder::new(points, dim, scale)?;
    builder.run();
    Ok(builder.finish())
}

fn segment_hull(points: &[Vector], scale: f64) -> Result<Polytope> {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let (a, b) = (points[lo][0], points[hi][0]);
    if b - a <= REL_TOL * scale {
        return Err(Error::Degenerate { subset_size: 1 });
    }
    Ok(segment(a, b, scale))
}

/// The 1-polytope `[a, b]`.
pub(crate) fn segment(a: f64, b: f64, scale: f64) -> Polytope {
    let vertices = vec![Vector::from_slice(&[a]), Vector::from_slice(&[b])];
    let facets = vec![
        Facet {
            vertex_ids: vec![0],
            normal: Vector::from_slice(&[-1.0]),
            offset: -a,
        },
        Facet {
            vertex_ids: vec![1],
            normal: Vector::from_slice(&[1.0]),
            offset: b,
        },
    ];
    Polytope {
        dim: 1,
        interior_point: Vector::from_slice(&[0.5 * (a + b)]),
        vertices,
        facets,
        scale,
        simplices: vec![
            BoundarySimplex {
                facet: 0,
                vertex_ids: vec![0],
            },
            BoundarySimplex {
                facet: 1,
                vertex_ids: vec![1],
            },
        ],
        ridges: Vec::new(),
    }
}

struct WorkFacet {
    verts: Vec<usize>,
    /// `nbrs[k]` lies across the ridge opposite `verts[k]`.
    nbrs: Vec<usize>,
    normal: Vector,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
    stamp: u32,
}

impl WorkFacet {
    fn distance(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

struct Builder<'a> {
    dim: usize,
    pts: &'a [Vector],
    eps: f64,
    scale: f64,
    center: Vector,
    facets: Vec<WorkFacet>,
    pending: Vec<usize>,
    stamp: u32,
}

impl<'a> Builder<'a> {
    fn new(pts: &'a [Vector], dim: usize, scale: f64) -> Result<Self> {
        let eps = REL_TOL * scale;
        let simplex = initial_simplex(pts, dim, eps)?;
        let center = simplex
            .iter()
            .fold(Vector::zeros(dim), |acc, &i| acc + pts[i])
            * (1.0 / (dim + 1) as f64);
        let mut b = Builder {
            dim,
            pts,
            eps,
            scale,
            center,
            facets: Vec::with_capacity(4 * pts.len()),
            pending: Vec::new(),
            stamp: 0,
        };
        for omit in 0..=dim {
            let verts: Vec<usize> = (0..=dim).filter(|&j| j != omit).map(|j| simplex[j]).collect();
            let nbrs: Vec<usize> = (0..=dim).filter(|&j| j != omit).collect();
            b.push_facet(verts, nbrs)
                .ok_or(Error::Degenerate { subset_size: dim })?;
        }
        let in_simplex = |i: usize| simplex.contains(&i);
        for i in (0..pts.len()).filter(|&i| !in_simplex(i)) {
            if let Some(f) = (0..=dim).find(|&f| b.facets[f].distance(&pts[i]) > eps) {
                b.facets[f].outside.push(i);
            }
        }
        b.pending.extend(0..=dim);
        Ok(b)
    }

    /// Appends a facet through `verts`, oriented away from the interior centre.
    fn push_facet(&mut self, verts: Vec<usize>, nbrs: Vec<usize>) -> Option<usize> {
        let refs: Vec<&Vector> = verts.iter().map(|&i| &self.pts[i]).collect();
        let mut normal = hyperplane_normal(&refs)?;
        let mut offset = normal.dot(&self.pts[verts[0]]);
        if normal.dot(&self.center) > offset {
            normal = -normal;
            offset = -offset;
        }
        self.facets.push(WorkFacet {
            verts,
            nbrs,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
            stamp: 0,
        });
        Some(self.facets.len() - 1)
    }

    fn run(&mut self) {
        while let Some(f) = self.pending.pop() {
            if !self.facets[f].alive || self.facets[f].outside.is_empty() {
                continue;
            }
            let apex = {
                let facet = &self.facets[f];
                *facet
                    .outside
                    .iter()
                    .max_by(|&&a, &&b| {
                        facet
                            .distance(&self.pts[a])
                            .total_cmp(&facet.distance(&self.pts[b]))
                            .then(b.cmp(&a))
                    })
                    .unwrap()
            };
            self.insert(f, apex);
        }
    }

    fn insert(&mut self, start: usize, apex: usize) {
        let d = self.dim;
        let p = self.pts[apex];
        self.stamp += 1;
        let stamp = self.stamp;

        // Connected set of facets that see the apex.
        let mut visible = vec![start];
        self.facets[start].stamp = stamp;
        let mut head = 0;
        while head < visible.len() {
            let f = visible[head];
            head += 1;
            for k in 0..d {
                let nb = self.facets[f].nbrs[k];
                if self.facets[nb].stamp != stamp && self.facets[nb].distance(&p) > self.eps {
                    self.facets[nb].stamp = stamp;
                    visible.push(nb);
                }
            }
        }

        let mut horizon = Vec::new();
        for &f in &visible {
            for k in 0..d {
                let nb = self.facets[f].nbrs[k];
                if self.facets[nb].stamp != stamp {
                    horizon.push((f, k, nb));
                }
            }
        }

        let first_new = self.facets.len();
        for &(f, k, nb) in &horizon {
            let mut verts: Vec<usize> = self.facets[f]
                .verts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &v)| v)
                .collect();
            verts.push(apex);
            let mut nbrs = vec![usize::MAX; d];
            nbrs[d - 1] = nb;
            let id = match self.push_facet(verts, nbrs) {
                Some(id) => id,
                // The apex is strictly beyond a facet through this ridge, so the
                // cone cannot be flat; keep going with a zero-area placeholder.
                None => self.push_flat_placeholder(f, k, nb, apex),
            };
            let slot = self.facets[nb]
                .nbrs
                .iter()
                .position(|&x| x == f)
                .expect("horizon neighbour must point back");
            self.facets[nb].nbrs[slot] = id;
        }

        // Glue the new cone along ridges through the apex.
        let mut open: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for id in first_new..self.facets.len() {
            for j in 0..d - 1 {
                let mut key: Vec<usize> = self.facets[id]
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &v)| v)
                    .collect();
                key.sort_unstable();
                match open.remove(&key) {
                    Some((other, slot)) => {
                        self.facets[id].nbrs[j] = other;
                        self.facets[other].nbrs[slot] = id;
                    }
                    None => {
                        open.insert(key, (id, j));
                    }
                }
            }
        }
        debug_assert!(open.is_empty(), "unmatched cone ridges");

        // Redistribute conflicts of the removed facets.
        let mut orphans = Vec::new();
        for &f in &visible {
            self.facets[f].alive = false;
            orphans.append(&mut self.facets[f].outside);
        }
        for q in orphans {
            if q == apex {
                continue;
            }
            let x = &self.pts[q];
            if let Some(id) = (first_new..self.facets.len()).find(|&id| self.facets[id].distance(x) > self.eps) {
                self.facets[id].outside.push(q);
            }
        }
        for id in first_new..self.facets.len() {
            if !self.facets[id].outside.is_empty() {
                self.pending.push(id);
            }
        }
    }

    fn push_flat_placeholder(&mut self, f: usize, k: usize, nb: usize, apex: usize) -> usize {
        let mut verts: Vec<usize> = self.facets[f]
            .verts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &v)| v)
            .collect();
        verts.push(apex);
        let mut nbrs = vec![usize::MAX; self.dim];
        nbrs[self.dim - 1] = nb;
        let normal = self.facets[nb].normal;
        let offset = normal.dot(&self.pts[apex]);
        self.facets.push(WorkFacet {
            verts,
            nbrs,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
            stamp: 0,
        });
        self.facets.len() - 1
    }

    fn finish(self) -> Polytope {
        let d = self.dim;
        let alive: Vec<usize> = (0..self.facets.len()).filter(|&f| self.facets[f].alive).collect();

        // Compact vertex numbering, in input order.
        let mut used = vec![false; self.pts.len()];
        for &f in &alive {
            for &v in &self.facets[f].verts {
                used[v] = true;
            }
        }
        let mut remap = vec![usize::MAX; self.pts.len()];
        let mut vertices = Vec::new();
        for (i, _) in used.iter().enumerate().filter(|(_, &u)| u) {
            remap[i] = vertices.len();
            vertices.push(self.pts[i]);
        }

        // Merge coplanar neighbouring simplices into one facet.
        let mut slot = vec![usize::MAX; self.facets.len()];
        for (s, &f) in alive.iter().enumerate() {
            slot[f] = s;
        }
        let mut uf = UnionFind::new(alive.len());
        for &f in &alive {
            let facet = &self.facets[f];
            for k in 0..d {
                let nb = facet.nbrs[k];
                if nb < f {
                    continue;
                }
                let other = &self.facets[nb];
                let apart = other
                    .verts
                    .iter()
                    .find(|v| !facet.verts.contains(v))
                    .expect("adjacent simplices differ in one vertex");
                if facet.distance(&self.pts[*apart]).abs() <= self.eps
                    && other.distance(&self.pts[facet.verts[k]]).abs() <= self.eps
                {
                    uf.union(slot[f], slot[nb]);
                }
            }
        }
        let mut group_of_root = HashMap::new();
        let mut group = vec![0usize; alive.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for s in 0..alive.len() {
            let root = uf.find(s);
            let g = *group_of_root.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            group[s] = g;
            members[g].push(alive[s]);
        }

        let facets: Vec<Facet> = members
            .iter()
            .map(|simplices| {
                let normal = self.facets[simplices[0]].normal;
                let mut ids: Vec<usize> = simplices
                    .iter()
                    .flat_map(|&f| self.facets[f].verts.iter().map(|&v| remap[v]))
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                let offset =
                    ids.iter().map(|&v| normal.dot(&vertices[v])).sum::<f64>() / ids.len() as f64;
                Facet {
                    vertex_ids: ids,
                    normal,
                    offset,
                }
            })
            .collect();

        let simplices = alive
            .iter()
            .enumerate()
            .map(|(s, &f)| BoundarySimplex {
                facet: group[s],
                vertex_ids: self.facets[f].verts.iter().map(|&v| remap[v]).collect(),
            })
            .collect();

        let mut ridge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut ridges: Vec<Ridge> = Vec::new();
        for &f in &alive {
            let facet = &self.facets[f];
            for k in 0..d {
                let nb = facet.nbrs[k];
                if nb < f {
                    continue;
                }
                let (a, b) = (group[slot[f]], group[slot[nb]]);
                if a == b {
                    continue;
                }
                let key = (a.min(b), a.max(b));
                let idx = *ridge_index.entry(key).or_insert_with(|| {
                    ridges.push(Ridge {
                        facets: key,
                        vertex_ids: Vec::new(),
                    });
                    ridges.len() - 1
                });
                let shared = facet
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &v)| remap[v]);
                ridges[idx].vertex_ids.extend(shared);
            }
        }
        for r in &mut ridges {
            r.vertex_ids.sort_unstable();
            r.vertex_ids.dedup();
        }

        let interior_point =
            vertices.iter().fold(Vector::zeros(d), |acc, v| acc + *v) * (1.0 / vertices.len() as f64);

        Polytope {
            dim: d,
            vertices,
            facets,
            interior_point,
            scale: self.scale,
            simplices,
            ridges,
        }
    }
}

/// Picks `dim + 1` affinely independent points: the farthest pair among the
/// per-axis extremes, then greedily the point farthest from the current affine
/// hull.
fn initial_simplex(pts: &[Vector], dim: usize, eps: f64) -> Result<Vec<usize>> {
    let mut extremes = Vec::with_capacity(2 * dim);
    for axis in 0..dim {
        let (mut lo, mut hi) = (0, 0);
        for (i, p) in pts.iter().enumerate() {
            if p[axis] < pts[lo][axis] {
                lo = i;
            }
            if p[axis] > pts[hi][axis] {
                hi = i;
            }
        }
        extremes.push(lo);
        extremes.push(hi);
    }
    let mut best = (extremes[0], extremes[1], -1.0);
    for (i, &a) in extremes.iter().enumerate() {
        for &b in &extremes[i + 1..] {
            let dist = (pts[a] - pts[b]).norm_squared();
            if dist > best.2 {
                best = (a, b, dist);
            }
        }
    }
    if best.2.sqrt() <= eps {
        return Err(Error::Degenerate { subset_size: 1 });
    }
    let mut simplex = vec![best.0, best.1];
    let origin = pts[best.0];
    let mut basis = orthonormalize(&[pts[best.1] - origin]).ok_or(Error::Degenerate { subset_size: 1 })?;

    while simplex.len() <= dim {
        let residual = |i: usize| {
            let mut w = pts[i] - origin;
            for b in &basis {
                w = w.axpy(-w.dot(b), b);
            }
            w
        };
        let (far, dist) = (0..pts.len())
            .map(|i| (i, residual(i).norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        if dist <= eps {
            return Err(Error::Degenerate {
                subset_size: simplex.len(),
            });
        }
        let w = residual(far);
        let mut w = w * (1.0 / w.norm());
        // Second pass for orthogonality.
        for b in &basis {
            w = w.axpy(-w.dot(b), b);
        }
        basis.push(w.normalized());
        simplex.push(far);
    }
    Ok(simplex)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
