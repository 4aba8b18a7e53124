//! Small dense helpers for matrices of order at most [`MAX_DIM`].

use crate::vector::{Vector, MAX_DIM};

type Square = [[f64; MAX_DIM]; MAX_DIM];

/// Determinant of the leading `n×n` block by Gaussian elimination with
/// partial pivoting.
pub(crate) fn determinant(mut m: Square, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for row in col + 1..n {
            let factor = m[row][col] / p;
            if factor != 0.0 {
                for k in col..n {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    det
}

/// Unit normal of the hyperplane through `d` points of ℝ^d, by cofactor
/// expansion of the difference vectors. `None` if the points are affinely
/// dependent to machine precision.
pub(crate) fn hyperplane_normal(points: &[&Vector]) -> Option<Vector> {
    let d = points.len();
    let origin = points[0];
    let mut normal = Vector::zeros(d);
    match d {
        1 => normal[0] = 1.0,
        2 => {
            let e = *points[1] - *origin;
            normal[0] = e[1];
            normal[1] = -e[0];
        }
        3 => {
            let a = *points[1] - *origin;
            let b = *points[2] - *origin;
            normal[0] = a[1] * b[2] - a[2] * b[1];
            normal[1] = a[2] * b[0] - a[0] * b[2];
            normal[2] = a[0] * b[1] - a[1] * b[0];
        }
        _ => {
            let rows: Vec<Vector> = points[1..].iter().map(|p| **p - *origin).collect();
            for skip in 0..d {
                let mut minor: Square = [[0.0; MAX_DIM]; MAX_DIM];
                for (r, row) in rows.iter().enumerate() {
                    let mut c = 0;
                    for (j, x) in row.iter().enumerate() {
                        if j != skip {
                            minor[r][c] = *x;
                            c += 1;
                        }
                    }
                }
                let sign = if skip % 2 == 0 { 1.0 } else { -1.0 };
                normal[skip] = sign * determinant(minor, d - 1);
            }
        }
    }
    let len = normal.norm();
    if len > 0.0 && len.is_finite() {
        Some(normal * (1.0 / len))
    } else {
        None
    }
}

/// `k`-dimensional volume of the simplex with the given `k + 1` vertices,
/// `sqrt(det Gram) / k!`. A single vertex has volume one.
pub(crate) fn simplex_volume(vertices: &[&Vector]) -> f64 {
    let k = vertices.len() - 1;
    if k == 0 {
        return 1.0;
    }
    let base = vertices[0];
    let edges: Vec<Vector> = vertices[1..].iter().map(|v| **v - *base).collect();
    let mut gram: Square = [[0.0; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for j in i..k {
            let g = edges[i].dot(&edges[j]);
            gram[i][j] = g;
            gram[j][i] = g;
        }
    }
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    determinant(gram, k).max(0.0).sqrt() / factorial
}

/// Modified Gram–Schmidt on `vectors`, applied twice. Returns `None` when a
/// vector is (numerically) in the span of its predecessors.
pub(crate) fn orthonormalize(vectors: &[Vector]) -> Option<Vec<Vector>> {
    let mut basis: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let original = v.norm();
        let mut w = *v;
        for _ in 0..2 {
            for b in &basis {
                w = w.axpy(-w.dot(b), b);
            }
        }
        let len = w.norm();
        if !(len > 1e-10 * original) {
            return None;
        }
        basis.push(w * (1.0 / len));
    }
    Some(basis)
}
