//! Convex hulls in several dimensions: facets, ridges, containment, JSON.
//!
//! Run with `cargo run --example hull_basics`.

use polylab::geometry::sample_boundary;
use polylab::measures::{surface_area_half, volume};
use polylab::{contains_point, convex_hull, ConvexBody, RngStream, Vector};

fn main() -> polylab::Result<()> {
    // Unit square plus its centre: the centre is not a vertex.
    let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]].map(|p| Vector::from_slice(&p));
    let p = convex_hull(&square, 2)?;
    println!("square: {} vertices, {} edges, area {}", p.vertices().len(), p.facets().len(), volume(&p));
    println!("{}", p.to_json()?);

    // Coplanar triangles are merged into the six square faces of the cube.
    let cube: Vec<Vector> = (0..8)
        .map(|m| Vector::from_slice(&[(m & 1) as f64, ((m >> 1) & 1) as f64, ((m >> 2) & 1) as f64]))
        .collect();
    let c = convex_hull(&cube, 3)?;
    println!("cube: {} facets, {} ridges", c.facets().len(), c.ridges().len());
    println!("contains (0.5, 0.5, 0.5): {}", contains_point(&c, &Vector::from_slice(&[0.5, 0.5, 0.5])));
    println!("contains (1.5, 0.5, 0.5): {}", contains_point(&c, &Vector::from_slice(&[1.5, 0.5, 0.5])));

    // Random polytopes inscribed in B^d.
    for d in 2..=5 {
        let body = ConvexBody::unit_ball(d)?;
        let mut rng = RngStream::new(1, d as u64);
        let pts: Vec<Vector> = (0..200).map(|_| sample_boundary(&body, &mut rng)).collect();
        let k = convex_hull(&pts, d)?;
        println!(
            "d={d}: K_200 has {} facets, volume {:.5}, half surface {:.5}",
            k.facets().len(),
            volume(&k),
            surface_area_half(&k)
        );
    }

    // Affinely dependent input is reported, not hulled.
    let line = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]].map(|p| Vector::from_slice(&p));
    println!("collinear input: {}", convex_hull(&line, 2).unwrap_err());
    Ok(())
}
