use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conic::{axis_quotient, curve_determinant, degenerate_witness, feet_on_axis, CurvePoly, Mode};
use crate::geometry::{collinear, conic_through_five, int, line_through, meet, rat, Conic, HLine, HPoint, ProjMap, Rat};
use crate::search::TicTacToe;
use crate::triples::{build_triples, Edge, LabeledSets, TripleSystem};

use super::GenError;

#[derive(Clone, Debug)]
pub struct ConicInstance {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    pub conic: Conic,
    /// B indices of the sampled conic points (`0..n_B`).
    pub planted_b: Vec<usize>,
    /// B indices of the concurrency points of the second triple.
    pub partners: Vec<usize>,
}

pub fn default_conic_triple() -> [HPoint; 3] {
    [HPoint::int(3, 2), HPoint::int(4, 5), HPoint::int(6, 7)]
}

fn forbidden(y: &Rat) -> bool {
    y.is_zero() || *y == int(1) || *y == int(2)
}

/// The x-axis points of the three feet.
fn feet(x: &Rat, y: &Rat) -> Result<[HPoint; 3], GenError> {
    let (u, t, s) = feet_on_axis(x, y, Mode::T1).map_err(|_| GenError::ForbiddenOrdinate(y.clone()))?;
    Ok([u, t, s].map(|f| HPoint::new(f, Rat::zero())))
}

/// Where the lines from `triple[k]` to `feet[k]` meet, if all three do.
fn concurrency_point(triple: &[HPoint; 3], feet: &[HPoint; 3]) -> Option<HPoint> {
    let lines: Vec<HLine> = (0..3).map(|k| line_through(&triple[k], &feet[k]).ok()).collect::<Option<_>>()?;
    let q = meet(&lines[0], &lines[1]).ok()?;
    lines[2].contains(&q).then_some(q)
}

fn check_triple(triple: &[HPoint; 3], base: &[HPoint; 3]) -> Result<(), GenError> {
    for (k, p) in triple.iter().enumerate() {
        let Some((_, y)) = p.to_affine() else { return Err(GenError::InvalidParameter("triple point at infinity")) };
        if y.is_zero() {
            return Err(GenError::InvalidParameter("triple point on the x-axis"));
        }
        if base.contains(p) || triple[..k].contains(p) {
            return Err(GenError::InvalidParameter("triple points must be distinct from each other and the base"));
        }
    }
    Ok(())
}

/// Whether adding sample `p` with partner `q` and feet `f` creates exactly
/// the six planted triples and no others.
fn adds_only_planted(
    a: &[HPoint],
    samples: &[HPoint],
    partners: &[HPoint],
    feet: &BTreeSet<HPoint>,
    p: &HPoint,
    q: &HPoint,
    f: &[HPoint; 3],
) -> bool {
    let fresh: Vec<&HPoint> = f.iter().filter(|x| !feet.contains(*x)).collect::<BTreeSet<_>>().into_iter().collect();
    let all_c: Vec<&HPoint> = feet.iter().chain(fresh.iter().copied()).collect();
    for (k, ak) in a.iter().enumerate() {
        for (mid, planted_side) in [(p, k < 3), (q, k >= 3)] {
            let hits: Vec<&&HPoint> = all_c.iter().filter(|c| collinear(ak, mid, c)).collect();
            let ok = if planted_side { hits.len() == 1 && **hits[0] == f[k % 3] } else { hits.is_empty() };
            if !ok {
                return false;
            }
        }
        let old_b = samples.iter().chain(partners);
        if old_b.clone().any(|b| fresh.iter().any(|c| collinear(ak, b, c))) {
            return false;
        }
    }
    true
}

/// Samples `n_b` rational points on the conic of `a_triple` against the
/// base triple (0,1), (0,2), (1,1), by intersecting it with random rational
/// lines through (0,1). A is the base followed by `a_triple`, B the samples
/// followed by their partner concurrency points, C the distinct feet.
pub fn gen_conic_instance(a_triple: &[HPoint; 3], n_b: usize, seed: u64) -> Result<ConicInstance, GenError> {
    if n_b == 0 {
        return Err(GenError::InvalidParameter("n_B >= 1"));
    }
    let base = Mode::T1.base();
    check_triple(a_triple, &base)?;
    if degenerate_witness(a_triple, Mode::T1).is_some() {
        return Err(GenError::DegenerateTriple);
    }
    let poly = curve_determinant(a_triple, Mode::T1).map_err(|_| GenError::InvalidParameter("triple"))?;
    let q: CurvePoly = axis_quotient(&poly).map_err(|_| GenError::DegenerateTriple)?;
    let conic = q.to_conic().map_err(|_| GenError::DegenerateTriple)?;
    let c = |i, j| q.coeff(i, j).clone();

    let mut a: Vec<HPoint> = base.to_vec();
    a.extend(a_triple.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: BTreeSet<HPoint> = base.iter().chain(a_triple).cloned().collect();
    let (mut samples, mut partners, mut all_feet) = (Vec::new(), Vec::new(), BTreeSet::new());
    let mut attempts = 0usize;
    while samples.len() < n_b {
        attempts += 1;
        if attempts > 400 * n_b + 2000 {
            return Err(GenError::ConstructionFailed("too few usable rational points on the conic"));
        }
        let h = 8 + (attempts / 16) as i64;
        let m = rat(rng.gen_range(-h..=h), rng.gen_range(1..=h));
        let den = c(2, 0) + &m * c(1, 1) + &m * &m * c(0, 2);
        if den.is_zero() {
            continue;
        }
        let x = -(c(1, 1) + &m * c(0, 2) * int(2) + c(1, 0) + &m * c(0, 1)) / den;
        let y = Rat::one() + &m * &x;
        if x.is_zero() || forbidden(&y) || &x + &y == int(2) {
            continue;
        }
        let p = HPoint::new(x.clone(), y.clone());
        if used.contains(&p) {
            continue;
        }
        let f = feet(&x, &y)?;
        let Some(partner) = concurrency_point(a_triple, &f) else { continue };
        if !partner.is_finite() || partner.y().is_some_and(|y| y.is_zero()) || partner == p || used.contains(&partner) {
            continue;
        }
        if !conic.contains(&p) {
            return Err(GenError::Verification("sample off the planted conic"));
        }
        if !adds_only_planted(&a, &samples, &partners, &all_feet, &p, &partner, &f) {
            continue;
        }
        used.insert(p.clone());
        used.insert(partner.clone());
        all_feet.extend(f);
        samples.push(p);
        partners.push(partner);
    }

    let b: Vec<HPoint> = samples.iter().chain(&partners).cloned().collect();
    let cs: Vec<HPoint> = all_feet.into_iter().collect();
    let sets = LabeledSets::new(a, b, cs, false).map_err(|_| GenError::Verification("conic instance sets"))?;
    let triples = build_triples(&sets);
    if triples.len() != 6 * n_b {
        return Err(GenError::Verification("unplanned collinear triple"));
    }
    for j in 0..n_b {
        let f = feet(sets.b[j].x().as_ref().unwrap(), sets.b[j].y().as_ref().unwrap())?;
        for k in 0..3 {
            let c_idx = sets.c.binary_search(&f[k]).map_err(|_| GenError::Verification("missing foot"))?;
            if !triples.contains(&Edge::new(k, j, c_idx)) || !triples.contains(&Edge::new(3 + k, n_b + j, c_idx)) {
                return Err(GenError::Verification("planted branch not collinear"));
            }
        }
    }
    Ok(ConicInstance { sets, triples, conic, planted_b: (0..n_b).collect(), partners: (n_b..2 * n_b).collect() })
}

#[derive(Clone, Debug)]
pub struct DegenerateInstance {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    /// B indices of the requested positions; their partners follow.
    pub positions: Vec<usize>,
}

/// (5/2, 3/2), (5, 3), (7/2, 3/2): similar to the base triple relative to
/// the x-axis.
pub fn degenerate_family_triple() -> [HPoint; 3] {
    [HPoint::new(rat(5, 2), rat(3, 2)), HPoint::int(5, 3), HPoint::new(rat(7, 2), rat(3, 2))]
}

pub fn default_degenerate_positions() -> Vec<(Rat, Rat)> {
    [(4, -1), (1, 3), (3, 4), (-6, -5)].iter().map(|&(x, y)| (int(x), int(y))).collect()
}

/// `n` seeded integer positions, each kept only if the family stays free of
/// unplanned triples.
pub(super) fn random_positions(n: usize, seed: u64) -> Result<Vec<(Rat, Rat)>, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 4 + 2 * n as i64;
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    for _ in 0..200 * n + 200 {
        if out.len() == n {
            return Ok(out);
        }
        let (x, y) = (int(rng.gen_range(-bound..=bound)), int(rng.gen_range(-bound..=bound)));
        if forbidden(&y) || out.contains(&(x.clone(), y.clone())) {
            continue;
        }
        out.push((x, y));
        if gen_degenerate_family(&out).is_err() {
            out.pop();
        }
    }
    Err(GenError::ConstructionFailed("too few admissible positions"))
}

/// For each position, the feet against the base triple and the point where
/// the lines from the similar triple to those feet meet. A is the base
/// followed by [`degenerate_family_triple`].
pub fn gen_degenerate_family(positions: &[(Rat, Rat)]) -> Result<DegenerateInstance, GenError> {
    if positions.is_empty() {
        return Err(GenError::InvalidParameter("at least one position"));
    }
    let base = Mode::T1.base();
    let second = degenerate_family_triple();
    let mut used: BTreeSet<HPoint> = base.iter().chain(&second).cloned().collect();
    let (mut bs, mut partners, mut all_feet) = (Vec::new(), Vec::new(), BTreeSet::new());
    for (x, y) in positions {
        if forbidden(y) {
            return Err(GenError::ForbiddenOrdinate(y.clone()));
        }
        if x.is_zero() || x + y == int(2) {
            return Err(GenError::ConstructionFailed("two feet coincide (x = 0 or x + y = 2)"));
        }
        let p = HPoint::new(x.clone(), y.clone());
        let f = feet(x, y)?;
        let q = concurrency_point(&second, &f).ok_or(GenError::Verification("lines to the feet are not concurrent"))?;
        if !q.is_finite() || q.y().is_some_and(|y| y.is_zero()) {
            return Err(GenError::ConstructionFailed("concurrency point at infinity or on the axis"));
        }
        if !used.insert(p.clone()) || !used.insert(q.clone()) {
            return Err(GenError::ConstructionFailed("coincident points"));
        }
        all_feet.extend(f);
        bs.push(p);
        partners.push(q);
    }
    let n = bs.len();
    let mut a = base.to_vec();
    a.extend(second);
    bs.extend(partners);
    let sets = LabeledSets::new(a, bs, all_feet.into_iter().collect(), false)
        .map_err(|_| GenError::Verification("degenerate family sets"))?;
    let triples = build_triples(&sets);
    if triples.len() != 6 * n {
        return Err(GenError::ConstructionFailed("a position creates an unplanned collinear triple"));
    }
    Ok(DegenerateInstance { sets, triples, positions: (0..n).collect() })
}

#[derive(Clone, Debug)]
pub struct PascalInstance {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    pub ttt: TicTacToe,
    /// Through the six points of A ∪ B.
    pub conic: Conic,
    /// P1..P6 in hexagon order.
    pub hexagon: [HPoint; 6],
}

fn circle_point(t: &Rat) -> HPoint {
    let d = Rat::one() + t * t;
    HPoint::new((Rat::one() - t * t) / &d, t * int(2) / d)
}

/// Six random rational points of a random projective image of the unit
/// circle. With X = P1P2∩P4P5, Y = P2P3∩P5P6, Z = P3P4∩P6P1, the sets
/// A = (P2, P4, P6), B = (P1, P3, P5), C = (X, Z, Y) carry a tic-tac-toe
/// whose C-vertices are collinear.
pub fn gen_pascal_ttt(seed: u64) -> Result<PascalInstance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut ts = BTreeSet::new();
        while ts.len() < 6 {
            ts.insert(rat(rng.gen_range(-20..=20), rng.gen_range(1..=20)));
        }
        let mut ts: Vec<Rat> = ts.into_iter().collect();
        // random hexagon order
        for i in (1..6).rev() {
            ts.swap(i, rng.gen_range(0..=i));
        }
        let rows: [[Rat; 3]; 3] = core::array::from_fn(|_| core::array::from_fn(|_| int(rng.gen_range(-5..=5))));
        let Ok(map) = ProjMap::from_rows(&rows) else { continue };
        let hex: Vec<HPoint> = ts.iter().map(|t| map.apply(&circle_point(t))).collect();
        if hex.iter().any(|p| !p.is_finite()) {
            continue;
        }
        let side = |i: usize, j: usize| line_through(&hex[i], &hex[j]).ok();
        let cross = |l1: Option<HLine>, l2: Option<HLine>| meet(&l1?, &l2?).ok().filter(HPoint::is_finite);
        let (Some(x), Some(y), Some(z)) =
            (cross(side(0, 1), side(3, 4)), cross(side(1, 2), side(4, 5)), cross(side(2, 3), side(5, 0)))
        else {
            continue;
        };
        if !collinear(&x, &y, &z) {
            return Err(GenError::Verification("Pascal line"));
        }
        let a = alloc::vec![hex[1].clone(), hex[3].clone(), hex[5].clone()];
        let b = alloc::vec![hex[0].clone(), hex[2].clone(), hex[4].clone()];
        let c = alloc::vec![x, z, y];
        let nine: BTreeSet<&HPoint> = a.iter().chain(&b).chain(&c).collect();
        if nine.len() != 9 {
            continue;
        }
        let Ok(sets) = LabeledSets::new(a, b, c, false) else { continue };
        let triples = build_triples(&sets);
        let e = |a, b, c| Edge::new(a, b, c);
        let ttt = TicTacToe { rows: [e(0, 0, 0), e(1, 1, 1), e(2, 2, 2)], cols: [e(0, 1, 2), e(1, 2, 0), e(2, 0, 1)] };
        // accidental extra collinearities are rejected to keep the instance exact
        if triples.len() != 6 || !ttt.verify(&triples) {
            continue;
        }
        let hexagon: [HPoint; 6] = core::array::from_fn(|k| hex[k].clone());
        let five: [HPoint; 5] = core::array::from_fn(|k| hex[k].clone());
        let fit = conic_through_five(&five).map_err(|_| GenError::Verification("conic through five"))?;
        if !fit.unique || !fit.conic.contains(&hexagon[5]) {
            return Err(GenError::Verification("sixth point off the conic"));
        }
        return Ok(PascalInstance { sets, triples, ttt, conic: fit.conic, hexagon });
    }
    Err(GenError::ConstructionFailed("no admissible hexagon"))
}
