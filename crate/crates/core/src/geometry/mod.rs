//! Dimension-generic polyhedral kernel: cones, halfspace intersections,
//! facet areas and volumes.

mod cone;
pub mod linalg;
mod polytope;

pub use cone::{in_omega, polar_cone, validate_cone, PolyhedralCone};
pub use linalg::{vector, Vector};
pub use polytope::{halfspace_to_vertices, Facet, FacetTag, Halfspace, TruncatedPolytope};

pub(crate) use polytope::assemble_polytope;

/// Tolerance for vertex merging, facet tightness and `Ω_C` membership.
pub const EPS_GEO: f64 = 1e-9;
