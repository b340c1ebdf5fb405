//! Conics through the centres of concurrent line triples when one set is
//! collinear, and the few-directions pipelines built on them.

mod curve;
mod directions;
mod extract;
mod poly;

use alloc::boxed::Box;

pub use curve::{axis_quotient, curve_determinant, degenerate_witness, factor_out_axis, feet_on_axis, DegenerateWitness, Mode};
pub use directions::{
    convex_few_directions, direction_instance, direction_instance_approx, direction_sets, ApproxDirections,
    DirectionInstance, FewDirections,
};
pub use extract::{
    best_branch_pair, carrier_line, extract_conic, BranchPair, CommonBranch, ConicExtraction, DegenerateReport,
    ExtractOptions, ModeChoice,
};
pub use poly::{CurvePoly, MAX_DEGREE};

use crate::geometry::{Conic, GeomError, Rat};
use crate::search::ParamError;
use crate::triples::{SetsError, TripleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConicError {
    #[error("ordinate {0} is excluded for this normalization")]
    ForbiddenOrdinate(Rat),
    #[error("point {0} of the triple lies on the axis")]
    PointOnAxis(usize),
    #[error("point is at infinity")]
    NotFinite,
    #[error("the curve determinant is identically zero")]
    ZeroPolynomial,
    #[error("polynomial is not divisible by y")]
    NotDivisible,
    #[error("no pair of A-triples shares a C-triple")]
    NoBranchPair,
    #[error("the two A-triples are similar relative to the line of C")]
    Degenerate(Box<DegenerateReport>),
    #[error("the C points are not collinear")]
    CNotCollinear,
    #[error("fewer than two distinct C points; their line is undetermined")]
    CarrierUndetermined,
    #[error("the points are not in convex position")]
    NotConvex,
    #[error("pair {0:?} is out of range or repeats a point")]
    InvalidPair((usize, usize)),
    #[error("the two extracted conics differ: {0:?} vs {1:?}")]
    ConicMismatch(Conic, Conic),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Geometry(GeomError),
    #[error(transparent)]
    Params(ParamError),
    #[error(transparent)]
    Sets(SetsError),
    #[error(transparent)]
    Triples(TripleError),
}
