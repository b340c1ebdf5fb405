use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::geometry::{line_through, proj_map_normalizing, similar_rel_line, Conic, HLine, HPoint, ProjMap, SimilarityWitness};
use crate::search::{partition_blocks, prune, PruneReport, SearchParams};
use crate::triples::{Class, Edge, LabeledSets, TripleSystem};

use super::curve::{curve_determinant, degenerate_witness, factor_out_axis, DegenerateWitness, Mode};
use super::poly::CurvePoly;
use super::ConicError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ModeChoice {
    /// T1, falling back to T2.
    #[default]
    Auto,
    Only(Mode),
}

impl ModeChoice {
    fn modes(self) -> &'static [Mode] {
        match self {
            ModeChoice::Auto => &[Mode::T1, Mode::T2],
            ModeChoice::Only(Mode::T1) => &[Mode::T1],
            ModeChoice::Only(Mode::T2) => &[Mode::T2],
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExtractOptions {
    pub mode: ModeChoice,
    /// Defaults to [`SearchParams::for_system`].
    pub params: Option<SearchParams>,
    /// Recorded in the result; branch enumeration is exhaustive.
    pub seed: u64,
}

/// One C-triple shared by the two A-triples of a [`BranchPair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonBranch {
    /// `c_triple[p]` is joined to `base[p]` and to `partner[p]`.
    pub c_triple: [usize; 3],
    pub base_mid: usize,
    pub partner_mid: usize,
}

/// Two A-triples with their common C-triple neighbours; `partner[p]`
/// corresponds to `base[p]` through every common C-triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPair {
    pub base: [usize; 3],
    pub partner: [usize; 3],
    pub common: Vec<CommonBranch>,
}

#[derive(Clone, Debug)]
pub struct ConicExtraction {
    pub mode: Mode,
    /// Sends C's line to the x-axis and the base triple onto the mode's base.
    pub map: ProjMap,
    pub poly: CurvePoly,
    pub normalized_conic: Conic,
    /// In input coordinates.
    pub conic: Conic,
    pub rank: u8,
    pub pair: BranchPair,
    /// Every B index on `conic`, ascending.
    pub on_conic: Vec<usize>,
    pub prune: PruneReport,
    pub params: SearchParams,
    pub seed: u64,
}

impl ConicExtraction {
    /// Rank below 3: a line pair or a double line.
    pub fn is_degenerate(&self) -> bool {
        self.rank < 3
    }
}

/// Why extraction refused: the partner triple is similar to the base triple
/// relative to C's line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateReport {
    pub pair: BranchPair,
    pub mode: Mode,
    pub map: ProjMap,
    pub witness: DegenerateWitness,
    pub similarity: Option<SimilarityWitness>,
}

/// The line carrying C, or the line at infinity.
pub fn carrier_line(sets: &LabeledSets) -> Result<HLine, ConicError> {
    if sets.c_at_infinity {
        return Ok(HLine::at_infinity());
    }
    let c = sets.set(Class::C);
    let Some(q) = c.iter().find(|q| **q != c[0]) else { return Err(ConicError::CarrierUndetermined) };
    let l = line_through(&c[0], q).map_err(ConicError::Geometry)?;
    if c.iter().all(|p| l.contains(p)) {
        Ok(l)
    } else {
        Err(ConicError::CNotCollinear)
    }
}

type Triple = [usize; 3];

fn sorted3(mut v: Triple) -> Triple {
    v.sort();
    v
}

/// `(α, π, b)` per sorted C-triple: branch through `b` joining `α[p]` to
/// `γ[π[p]]`.
fn branches_by_c_triple(t: &TripleSystem, m: usize) -> BTreeMap<Triple, Vec<(Triple, Triple, usize)>> {
    let part = partition_blocks(t, m).expect("positive block size");
    let mut groups: BTreeMap<(usize, usize, usize), Vec<Edge>> = BTreeMap::new();
    for e in t.edges() {
        groups.entry((e.b, part.a_block(e.a), part.c_block(e.c))).or_default().push(*e);
    }
    let mut out: BTreeMap<Triple, Vec<(Triple, Triple, usize)>> = BTreeMap::new();
    for ((b, _, _), edges) in groups {
        for x in 0..edges.len() {
            for y in x + 1..edges.len() {
                for z in y + 1..edges.len() {
                    let mut tri = [edges[x], edges[y], edges[z]];
                    tri.sort_by_key(|e| e.a);
                    let alpha = tri.map(|e| e.a);
                    let gamma = sorted3(tri.map(|e| e.c));
                    if alpha[0] == alpha[1] || alpha[1] == alpha[2] || gamma[0] == gamma[1] || gamma[1] == gamma[2] {
                        continue;
                    }
                    let pi = tri.map(|e| gamma.iter().position(|&c| c == e.c).unwrap());
                    out.entry(gamma).or_default().push((alpha, pi, b));
                }
            }
        }
    }
    out
}

/// The A-triple pair with the most common C-triples; ties go to the
/// lexicographically smallest `(base, partner)`.
pub fn best_branch_pair(t: &TripleSystem, m: usize) -> Option<BranchPair> {
    let mut pairs: BTreeMap<(Triple, Triple), Vec<CommonBranch>> = BTreeMap::new();
    for (gamma, entries) in branches_by_c_triple(t, m) {
        for (alpha1, pi1, b1) in &entries {
            for (alpha2, pi2, b2) in &entries {
                if alpha1 >= alpha2 || b1 == b2 {
                    continue;
                }
                // partner[p] meets the same C point as alpha1[p]
                let partner: Triple = core::array::from_fn(|p| alpha2[pi2.iter().position(|&q| q == pi1[p]).unwrap()]);
                let c_triple = pi1.map(|q| gamma[q]);
                pairs.entry((*alpha1, partner)).or_default().push(CommonBranch { c_triple, base_mid: *b1, partner_mid: *b2 });
            }
        }
    }
    let mut best: Option<((Triple, Triple), Vec<CommonBranch>)> = None;
    for (k, v) in pairs {
        if best.as_ref().map_or(true, |(_, bv)| v.len() > bv.len()) {
            best = Some((k, v));
        }
    }
    best.map(|((base, partner), common)| BranchPair { base, partner, common })
}

fn finite_affine(p: &HPoint) -> Option<(crate::geometry::Rat, crate::geometry::Rat)> {
    p.to_affine()
}

/// Normalizes C's line to the x-axis, prunes, enumerates 3-branches, picks
/// the best A-triple pair, and factors the concurrency determinant into a
/// conic through the base-branch midpoints.
pub fn extract_conic(sets: &LabeledSets, t: &TripleSystem, opts: &ExtractOptions) -> Result<ConicExtraction, ConicError> {
    let line = carrier_line(sets)?;
    let params = opts.params.clone().unwrap_or_else(|| SearchParams::for_system(t));
    params.validate().map_err(ConicError::Params)?;
    let (pruned, prune_report) = prune(t, &params);
    let pair = best_branch_pair(&pruned, params.block_size).ok_or(ConicError::NoBranchPair)?;

    let a = sets.set(Class::A);
    let b = sets.set(Class::B);
    let base_pts = pair.base.map(|i| a[i].clone());
    let partner_pts = pair.partner.map(|i| a[i].clone());

    let mut last_err = ConicError::NoBranchPair;
    for &mode in opts.mode.modes() {
        let map = match proj_map_normalizing(&base_pts, &mode.base(), &line, &HLine::x_axis()) {
            Ok(m) => m,
            Err(e) => {
                last_err = ConicError::Geometry(e);
                continue;
            }
        };
        let forbidden = mode.forbidden_ordinates();
        let mids_ok = pair.common.iter().all(|cb| {
            finite_affine(&map.apply(&b[cb.base_mid])).is_some_and(|(_, y)| !forbidden.contains(&y))
        });
        if !mids_ok {
            last_err = ConicError::ForbiddenOrdinate(forbidden[0].clone());
            continue;
        }
        let partner_n = partner_pts.clone().map(|p| map.apply(&p));
        let poly = match curve_determinant(&partner_n, mode) {
            Ok(p) => p,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let witness = degenerate_witness(&partner_n, mode);
        match (poly.is_zero(), witness) {
            (true, Some(witness)) => {
                let similarity = similar_rel_line(&base_pts, &partner_pts, &line).ok().flatten();
                return Err(ConicError::Degenerate(Box::new(DegenerateReport { pair, mode, map, witness, similarity })));
            }
            (false, None) => {}
            _ => return Err(ConicError::Inconsistent("degeneracy identities disagree with the determinant")),
        }
        let normalized_conic = factor_out_axis(&poly)?;
        let conic = map.pull_back_conic(&normalized_conic);
        if !pair.common.iter().all(|cb| conic.contains(&b[cb.base_mid])) {
            return Err(ConicError::Inconsistent("branch midpoint off the extracted conic"));
        }
        let on_conic = (0..b.len()).filter(|&i| conic.contains(&b[i])).collect();
        let rank = conic.rank();
        return Ok(ConicExtraction {
            mode,
            map,
            poly,
            normalized_conic,
            conic,
            rank,
            pair,
            on_conic,
            prune: prune_report,
            params,
            seed: opts.seed,
        });
    }
    Err(last_err)
}
