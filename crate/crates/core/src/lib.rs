//! Monte Carlo laboratory for random polytopes whose vertices are drawn
//! uniformly from the boundary of a smooth convex body.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: balls and ellipsoids, support functions, boundary sampling
//!   and reference intrinsic volumes.
//! - [`hull`]: incremental convex hulls in dimensions up to six.
//! - [`measures`]: exact and projection-averaged intrinsic volumes.
//! - [`surface_body`]: caps, surface bodies and the containment predicate for
//!   the unit ball.
//! - [`stats`]: power-law fits, the Kolmogorov distance and the normal CDF.
//! - [`experiments`]: seeded, parallel scaling experiments.
//! - [`cli`]: the `polylab` command line, CSV/JSON/SVG output.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod hull;
mod linalg;
pub mod measures;
pub mod quadrature;
pub mod rng;
pub mod stats;
pub mod surface_body;
pub mod vector;

pub use error::{Error, Result};
pub use geometry::{BodyKind, ConvexBody};
pub use hull::{contains_point, convex_hull, facet_adjacency, Facet, Polytope, Ridge};
pub use rng::RngStream;
pub use vector::Vector;
