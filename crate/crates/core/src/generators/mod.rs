//! Planted instances whose structure is known exactly. Every generator
//! checks its own output before returning it.

use alloc::vec::Vec;

use crate::geometry::approx::ApproxPoint;
use crate::geometry::{Conic, Rat};
use crate::search::{KSystem, TicTacToe};
use crate::triples::{build_triples, LabeledSets, TripleSystem};

mod avoiding;
mod conic;
mod grid;
mod ksystem;

pub use avoiding::{gen_mutually_avoiding, gen_ngon, gen_parallel_lines};
pub use conic::{
    default_conic_triple, default_degenerate_positions, degenerate_family_triple, gen_conic_instance,
    gen_degenerate_family, gen_pascal_ttt, ConicInstance, DegenerateInstance, PascalInstance,
};
pub use grid::gen_grid_with_directions;
pub use ksystem::{default_offsets, gen_ksystem, KSystemInstance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("blocks overlap: consecutive offsets must differ by more than (k-1)d")]
    OverlappingBlocks,
    #[error("the triple is similar to the base triple relative to the x-axis")]
    DegenerateTriple,
    #[error("ordinate {0} is forbidden")]
    ForbiddenOrdinate(Rat),
    #[error("construction failed: {0} (try another seed)")]
    ConstructionFailed(&'static str),
    #[error("generated instance failed its own check: {0}")]
    Verification(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    Grid,
    ConicInstance,
    KSystem,
    DegenerateFamily,
    MutuallyAvoiding,
    Ngon,
    PascalTtt,
    /// Three parallel lines with random integer/half-integer abscissae.
    Parallel,
}

impl GenKind {
    pub const ALL: [GenKind; 8] = [
        GenKind::Grid,
        GenKind::ConicInstance,
        GenKind::KSystem,
        GenKind::DegenerateFamily,
        GenKind::MutuallyAvoiding,
        GenKind::Ngon,
        GenKind::PascalTtt,
        GenKind::Parallel,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GenKind::Grid => "grid",
            GenKind::ConicInstance => "conic-instance",
            GenKind::KSystem => "ksystem",
            GenKind::DegenerateFamily => "degenerate-family",
            GenKind::MutuallyAvoiding => "mutually-avoiding",
            GenKind::Ngon => "ngon",
            GenKind::PascalTtt => "pascal-ttt",
            GenKind::Parallel => "parallel",
        }
    }

    pub fn from_tag(s: &str) -> Option<GenKind> {
        Self::ALL.into_iter().find(|k| k.tag() == s)
    }
}

/// `n` is the size parameter of the kind (grid side, B count, points per
/// set, positions, polygon order); `k` is only read by `ksystem`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = match self.kind {
            GenKind::Grid if self.n < 2 => Some("grid needs n >= 2"),
            GenKind::ConicInstance if self.n < 1 => Some("conic-instance needs n >= 1"),
            GenKind::KSystem if self.k < 1 => Some("ksystem needs k >= 1"),
            GenKind::MutuallyAvoiding | GenKind::Parallel if self.n < 1 => Some("needs n >= 1"),
            GenKind::Ngon if self.n < 3 => Some("ngon needs n >= 3"),
            _ => None,
        };
        bad.map_or(Ok(()), |m| Err(GenError::InvalidParameter(m)))
    }
}

/// Structure planted by a generator, for round-trip checks.
#[derive(Clone, Debug)]
pub enum Planted {
    None,
    Conic { conic: Conic, b_indices: Vec<usize> },
    KSystem(KSystem),
    Pascal { ttt: TicTacToe, conic: Conic },
    /// B indices of the requested positions; the instance is degenerate.
    Degenerate { positions: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    pub planted: Planted,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Exact(Instance),
    /// Floating-point output (regular polygons).
    Approx(Vec<ApproxPoint>),
}

fn exact(sets: LabeledSets, planted: Planted) -> Generated {
    let triples = build_triples(&sets);
    Generated::Exact(Instance { sets, triples, planted })
}

/// Runs the generator selected by `spec` with its default shape
/// parameters. `degenerate-family` with `n = 0` uses the default positions;
/// otherwise it draws `n` seeded integer positions.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    spec.validate()?;
    Ok(match spec.kind {
        GenKind::Grid => exact(gen_grid_with_directions(spec.n)?, Planted::None),
        GenKind::ConicInstance => {
            let g = gen_conic_instance(&default_conic_triple(), spec.n, spec.seed)?;
            Generated::Exact(Instance { sets: g.sets, triples: g.triples, planted: Planted::Conic { conic: g.conic, b_indices: g.planted_b } })
        }
        GenKind::KSystem => {
            let d = Rat::from_integer(1.into());
            let s = default_offsets(spec.k, &d);
            let g = gen_ksystem(spec.k, &d, &s, &s)?;
            Generated::Exact(Instance { sets: g.sets, triples: g.triples, planted: Planted::KSystem(g.expected) })
        }
        GenKind::DegenerateFamily => {
            let positions = if spec.n == 0 { default_degenerate_positions() } else { conic::random_positions(spec.n, spec.seed)? };
            let g = gen_degenerate_family(&positions)?;
            Generated::Exact(Instance { sets: g.sets, triples: g.triples, planted: Planted::Degenerate { positions: g.positions } })
        }
        GenKind::MutuallyAvoiding => exact(gen_mutually_avoiding(spec.n, spec.seed)?, Planted::None),
        GenKind::Ngon => Generated::Approx(gen_ngon(spec.n)?),
        GenKind::PascalTtt => {
            let g = gen_pascal_ttt(spec.seed)?;
            Generated::Exact(Instance { sets: g.sets, triples: g.triples, planted: Planted::Pascal { ttt: g.ttt, conic: g.conic } })
        }
        GenKind::Parallel => exact(gen_parallel_lines(spec.n, spec.seed)?, Planted::None),
    })
}
