use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::geometry::approx::{convex_position_order_approx, count_directions_approx, ApproxPoint};
use crate::geometry::{convex_position_order, direction_of, line_through, Conic, HLine, HPoint, Rat};
use crate::triples::{build_triples_from_selection, Edge, LabeledSets, TripleSystem};

use super::extract::{extract_conic, ConicExtraction, ExtractOptions};
use super::ConicError;

/// A convex pointset split by a line into two arcs, with the directions of
/// the crossing pairs as a third set at infinity.
#[derive(Clone, Debug)]
pub struct DirectionInstance {
    /// Counter-clockwise hull order of the input.
    pub hull_order: Vec<usize>,
    /// Input indices of the two arcs; they become A and B of `sets`.
    pub near: Vec<usize>,
    pub far: Vec<usize>,
    /// Separating line through the midpoints of the two cut edges (`None`
    /// for fewer than three points).
    pub split_line: Option<HLine>,
    /// Crossing pairs of E as `(near position, far position)`.
    pub crossing: Vec<(usize, usize)>,
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    /// Distinct directions over all of E.
    pub direction_count: usize,
}

impl DirectionInstance {
    /// Distinct directions among the crossing pairs, i.e. `|C|`.
    pub fn crossing_direction_count(&self) -> usize {
        self.sets.c.len()
    }
}

fn check_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<(), ConicError> {
    match pairs.iter().find(|&&(i, j)| i >= n || j >= n || i == j) {
        Some(&p) => Err(ConicError::InvalidPair(p)),
        None => Ok(()),
    }
}

/// Arc of `len` hull positions maximizing crossing pairs. Ties go to the
/// smallest sorted index set, so the choice depends only on the cyclic
/// order, not on where the hull walk starts or its orientation. Both arcs
/// are returned sorted by input index.
fn best_split(order: &[usize], pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let n = order.len();
    let len = n / 2;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for r in 0..n.max(1) {
        let mut near: Vec<usize> = (0..len).map(|k| order[(r + k) % n]).collect();
        near.sort();
        let crossing = pairs.iter().filter(|(i, j)| near.binary_search(i).is_ok() != near.binary_search(j).is_ok()).count();
        let better = match &best {
            None => true,
            Some((c, v)) => crossing > *c || (crossing == *c && near < *v),
        };
        if better {
            best = Some((crossing, near));
        }
    }
    let near = best.map(|b| b.1).unwrap_or_default();
    let far: Vec<usize> = order.iter().copied().filter(|i| near.binary_search(i).is_err()).collect::<BTreeSet<_>>().into_iter().collect();
    (near, far)
}

/// Sets `(A, B, C)` = (points of `left`, points of `right`, directions of
/// the pairs of E joining them) with one triple per such pair.
pub fn direction_sets(
    points: &[HPoint],
    left: &[usize],
    right: &[usize],
    pairs: &[(usize, usize)],
) -> Result<(LabeledSets, TripleSystem, Vec<(usize, usize)>), ConicError> {
    let lpos: BTreeMap<usize, usize> = left.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let rpos: BTreeMap<usize, usize> = right.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut joined: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in pairs {
        if let (Some(&x), Some(&y)) = (lpos.get(&i), rpos.get(&j)) {
            joined.insert((x, y));
        } else if let (Some(&x), Some(&y)) = (lpos.get(&j), rpos.get(&i)) {
            joined.insert((x, y));
        }
    }
    let mut dirs: BTreeMap<HPoint, usize> = BTreeMap::new();
    let mut with_dir = Vec::with_capacity(joined.len());
    for &(x, y) in &joined {
        let d = direction_of(&points[left[x]], &points[right[y]]).map_err(ConicError::Geometry)?;
        with_dir.push((x, y, d.clone()));
        dirs.insert(d, 0);
    }
    for (k, v) in dirs.values_mut().enumerate() {
        *v = k;
    }
    let c: Vec<HPoint> = dirs.keys().cloned().collect();
    let a: Vec<HPoint> = left.iter().map(|&i| points[i].clone()).collect();
    let b: Vec<HPoint> = right.iter().map(|&i| points[i].clone()).collect();
    let sets = LabeledSets::new(a, b, c, true).map_err(ConicError::Sets)?;
    let selection: Vec<Edge> = with_dir.iter().map(|(x, y, d)| Edge::new(*x, *y, dirs[d])).collect();
    let triples = build_triples_from_selection(&sets, &selection).map_err(ConicError::Triples)?;
    Ok((sets, triples, joined.into_iter().collect()))
}

/// Line through the midpoints of the two hull edges leaving the near arc.
fn split_line(points: &[HPoint], order: &[usize], near: &[usize]) -> Option<HLine> {
    let n = order.len();
    if n < 3 || near.is_empty() {
        return None;
    }
    let inside = |k: usize| near.binary_search(&order[k % n]).is_ok();
    let cuts: Vec<usize> = (0..n).filter(|&k| inside(k) != inside(k + 1)).collect();
    let two = Rat::from_integer(2.into());
    let mid = |k: usize| {
        let (x1, y1) = points[order[k]].to_affine()?;
        let (x2, y2) = points[order[(k + 1) % n]].to_affine()?;
        Some(HPoint::new((x1 + x2) / &two, (y1 + y2) / &two))
    };
    line_through(&mid(cuts[0])?, &mid(*cuts.get(1)?)?).ok()
}

/// Splits a convex pointset into two hull arcs maximizing the crossing
/// pairs of E and builds the (arc, arc, direction) triple system.
pub fn direction_instance(points: &[HPoint], pairs: &[(usize, usize)]) -> Result<DirectionInstance, ConicError> {
    check_pairs(points.len(), pairs)?;
    if points.iter().any(|p| !p.is_finite()) {
        return Err(ConicError::NotFinite);
    }
    let hull_order = convex_position_order(points).ok_or(ConicError::NotConvex)?;
    let (near, far) = best_split(&hull_order, pairs);
    let split_line = split_line(points, &hull_order, &near);
    let (sets, triples, crossing) = direction_sets(points, &near, &far, pairs)?;
    let all: BTreeSet<HPoint> =
        pairs.iter().map(|&(i, j)| direction_of(&points[i], &points[j])).collect::<Result<_, _>>().map_err(ConicError::Geometry)?;
    Ok(DirectionInstance { hull_order, near, far, split_line, crossing, sets, triples, direction_count: all.len() })
}

/// Floating-point counterpart of [`direction_instance`] for inputs such as
/// regular polygons.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxDirections {
    pub hull_order: Vec<usize>,
    pub near: Vec<usize>,
    pub far: Vec<usize>,
    pub crossing: Vec<(usize, usize)>,
    pub crossing_direction_count: usize,
    pub direction_count: usize,
}

pub fn direction_instance_approx(points: &[ApproxPoint], pairs: &[(usize, usize)], tol: f64) -> Result<ApproxDirections, ConicError> {
    check_pairs(points.len(), pairs)?;
    let hull_order = convex_position_order_approx(points, tol).ok_or(ConicError::NotConvex)?;
    let (near, far) = best_split(&hull_order, pairs);
    let near_set: BTreeSet<usize> = near.iter().copied().collect();
    let crossing: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|(i, j)| near_set.contains(i) != near_set.contains(j))
        .map(|&(i, j)| if near_set.contains(&i) { (i, j) } else { (j, i) })
        .collect();
    Ok(ApproxDirections {
        crossing_direction_count: count_directions_approx(points, &crossing, tol),
        direction_count: count_directions_approx(points, pairs, tol),
        hull_order,
        near,
        far,
        crossing,
    })
}

/// Output of the two-sided few-directions pipeline.
#[derive(Clone, Debug)]
pub struct FewDirections {
    pub instance: DirectionInstance,
    /// Far-arc points of degree at least `|E′| / 2n` (input indices).
    pub kept_far: Vec<usize>,
    pub first: ConicExtraction,
    pub second: ConicExtraction,
    /// Input indices on the conic from the first and second runs.
    pub a_star: Vec<usize>,
    pub a_star_star: Vec<usize>,
    pub conic: Conic,
    /// Pairs of E with one endpoint in each of `a_star_star`, `a_star`.
    pub h: Vec<(usize, usize)>,
}

/// Extracts a conic from the far arc, then again from the near arc with
/// the roles swapped, and requires the two conics to coincide exactly.
pub fn convex_few_directions(points: &[HPoint], pairs: &[(usize, usize)], opts: &ExtractOptions) -> Result<FewDirections, ConicError> {
    let instance = direction_instance(points, pairs)?;
    let n = points.len();
    let e1 = instance.crossing.len();
    let mut degree = alloc::vec![0usize; instance.far.len()];
    for &(_, y) in &instance.crossing {
        degree[y] += 1;
    }
    let kept_far: Vec<usize> =
        instance.far.iter().zip(&degree).filter(|(_, &d)| 2 * n * d >= e1).map(|(&i, _)| i).collect();

    let (sets1, t1, _) = direction_sets(points, &instance.near, &kept_far, pairs)?;
    let first = extract_conic(&sets1, &t1, opts)?;
    let a_star: Vec<usize> = first.on_conic.iter().map(|&k| kept_far[k]).collect();

    let (sets2, t2, _) = direction_sets(points, &a_star, &instance.near, pairs)?;
    let second = extract_conic(&sets2, &t2, opts)?;
    let a_star_star: Vec<usize> = second.on_conic.iter().map(|&k| instance.near[k]).collect();

    if first.conic != second.conic {
        return Err(ConicError::ConicMismatch(first.conic.clone(), second.conic.clone()));
    }
    let s1: BTreeSet<usize> = a_star_star.iter().copied().collect();
    let s2: BTreeSet<usize> = a_star.iter().copied().collect();
    let h: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(i, j)| (s1.contains(&i) && s2.contains(&j)) || (s1.contains(&j) && s2.contains(&i)))
        .collect();
    let conic = first.conic.clone();
    Ok(FewDirections { instance, kept_far, first, second, a_star, a_star_star, conic, h })
}
