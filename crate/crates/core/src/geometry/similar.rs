use super::{collinear, line_through, meet, GeomError, HLine, HPoint};

/// Evidence that two triangles are similar relative to a line: the meets of
/// corresponding side-lines, all incident to `carrier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    /// Corresponding side-lines, sides ordered (0,1), (1,2), (2,0).
    pub sides: [(HLine, HLine); 3],
    pub meets: [HPoint; 3],
    pub carrier: HLine,
}

const SIDES: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

/// Tests whether corresponding sides of `t1` and `t2` (vertex `i` ↔ vertex
/// `i`) meet on `l`. Coincident corresponding sides count as meeting on `l`.
pub fn similar_rel_line(
    t1: &[HPoint; 3],
    t2: &[HPoint; 3],
    l: &HLine,
) -> Result<Option<SimilarityWitness>, GeomError> {
    for t in [t1, t2] {
        if collinear(&t[0], &t[1], &t[2]) {
            return Err(GeomError::DegenerateTriangle);
        }
    }
    let mut sides = alloc::vec::Vec::with_capacity(3);
    let mut meets = alloc::vec::Vec::with_capacity(3);
    for (i, j) in SIDES {
        let s1 = line_through(&t1[i], &t1[j])?;
        let s2 = line_through(&t2[i], &t2[j])?;
        let m = if s1 == s2 {
            if &s1 == l {
                t1[i].clone()
            } else {
                meet(&s1, l)?
            }
        } else {
            meet(&s1, &s2)?
        };
        if !l.contains(&m) {
            return Ok(None);
        }
        sides.push((s1, s2));
        meets.push(m);
    }
    Ok(Some(SimilarityWitness {
        sides: sides.try_into().ok().unwrap(),
        meets: meets.try_into().ok().unwrap(),
        carrier: l.clone(),
    }))
}

/// The six vertex correspondences, as permutations applied to `t2`.
pub const CORRESPONDENCES: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Tries every correspondence; returns the first permutation `π` for which
/// `t1[i] ↔ t2[π[i]]` is similar relative to `l`.
pub fn similar_any_correspondence(
    t1: &[HPoint; 3],
    t2: &[HPoint; 3],
    l: &HLine,
) -> Result<Option<([usize; 3], SimilarityWitness)>, GeomError> {
    for pi in CORRESPONDENCES {
        let permuted = [t2[pi[0]].clone(), t2[pi[1]].clone(), t2[pi[2]].clone()];
        if let Some(w) = similar_rel_line(t1, &permuted, l)? {
            return Ok(Some((pi, w)));
        }
    }
    Ok(None)
}
