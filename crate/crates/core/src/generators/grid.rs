use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::geometry::{direction_of, HPoint};
use crate::triples::{build_triples, Edge, LabeledSets};

use super::GenError;

/// The `m × m` integer grid split by a vertical line (A: `x < m/2`), with C
/// the directions of all A–B pairs.
pub fn gen_grid_with_directions(m: usize) -> Result<LabeledSets, GenError> {
    if m < 2 {
        return Err(GenError::InvalidParameter("grid needs m >= 2"));
    }
    let m = m as i64;
    let half = m / 2;
    let column = |xs: core::ops::Range<i64>| xs.flat_map(|x| (0..m).map(move |y| HPoint::int(x, y))).collect::<Vec<_>>();
    let a = column(0..half);
    let b = column(half..m);
    let dirs: BTreeSet<HPoint> =
        a.iter().flat_map(|p| b.iter().map(move |q| direction_of(p, q).expect("distinct grid points"))).collect();
    let c: Vec<HPoint> = dirs.into_iter().collect();
    let sets = LabeledSets::new(a, b, c, true).map_err(|_| GenError::Verification("grid sets"))?;

    let t = build_triples(&sets);
    for (i, p) in sets.a.iter().enumerate() {
        for (j, q) in sets.b.iter().enumerate() {
            let d = direction_of(p, q).expect("distinct grid points");
            let k = sets.c.binary_search(&d).map_err(|_| GenError::Verification("missing direction"))?;
            if !t.contains(&Edge::new(i, j, k)) {
                return Err(GenError::Verification("pair not joined to its direction"));
            }
        }
    }
    Ok(sets)
}
