//! Exact projective-plane primitives over the rationals.

pub mod approx;
mod conic;
mod hull;
mod point;
mod predicates;
mod projective;
mod similar;

pub use conic::{conic_rank, conic_through_five, on_conic, Conic, ConicFit};
pub use hull::{convex_hull, convex_position_order, line_meets_hull};
pub use point::{int, rat, HLine, HPoint};
pub use predicates::{
    collinear, concurrent, direction_of, incident, line_through, meet, orient, Orientation,
};
pub use projective::{proj_map_normalizing, ProjMap};
pub use similar::{similar_any_correspondence, similar_rel_line, SimilarityWitness, CORRESPONDENCES};

/// Exact rational number.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("the two points are identical")]
    IdenticalPoints,
    #[error("the two lines are identical")]
    IdenticalLines,
    #[error("point is at infinity")]
    NotFinite,
    #[error("the triple is collinear")]
    DegenerateTriangle,
    #[error("the points are not in general position with respect to the line")]
    DegenerateConfiguration,
    #[error("normalizing map is not unique (solution space of dimension {0})")]
    NoUniqueMap(usize),
    #[error("map is singular")]
    SingularMap,
}
