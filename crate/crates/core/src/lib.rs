//! Quadrisections of triangles.
//!
//! A quadrisection is a pair of perpendicular segments that cut a triangle
//! into four regions of equal area. This crate finds every quadrisection of
//! a given triangle, counts them through the circle-arc family and its
//! envelope, cross-checks the count against direct root enumeration, and
//! reproduces the classical computations of Jacob Bernoulli and Euler.
//!
//! Every triangle is handled in canonical position: `A = (0, 0)`,
//! `B = (1, 0)`, `C = (h, ht)` with `h >= 1/2` and `ht > 0`.
//!
//! ```
//! use quadrisect::{enumerate_quadrisections, TriangleSpec, Tolerances};
//!
//! let equilateral = TriangleSpec::from_sides(1.0, 1.0, 1.0).unwrap();
//! let quads = enumerate_quadrisections(&equilateral, &Tolerances::default()).unwrap();
//! assert_eq!(quads.len(), 3);
//! ```

pub mod arcs;
pub mod atlas;
mod error;
pub mod geometry;
pub mod historical;
pub mod polygon;
pub mod roots;
pub mod solver;
pub mod svg;
mod tolerance;

pub use arcs::{
    arc_data, count_via_theorem, envelope_point, in_fd2, j0_point, jacobian_f, map_f, special_triangles, theorem_count,
    ArcData, CountReport, DomainPoint, Membership, Sheet, SpecialTriangles, TheoremCase, TheoremVerdict,
};
pub use error::{Error, Result};
pub use geometry::{
    canonicalize, classify_region, invert_point, placements, triangle_angles, upsilon_contains, CanonicalTriangle,
    Point2, RegionLabel, SideRank, SideRole, Similarity, TriangleAngles, TriangleSpec,
};
pub use solver::{
    aeq_residual, build_quadrisection, enumerate_quadrisections, peq_residual, solve_base, verify_quadrisection,
    y_of_x, BaseRoot, BaseSolution, Quadrisection, VerificationReport,
};
pub use tolerance::Tolerances;
