use alloc::vec::Vec;

use super::{orient, HLine, HPoint, Orientation};

/// Whether `l` meets the convex hull of the finite points `pts`. Touching
/// counts.
pub fn line_meets_hull(l: &HLine, pts: &[HPoint]) -> bool {
    let (mut pos, mut neg) = (false, false);
    for p in pts {
        match l.side(p) {
            0 => return true,
            s if s > 0 => pos = true,
            _ => neg = true,
        }
        if pos && neg {
            return true;
        }
    }
    false
}

/// Indices of the strict hull vertices in counter-clockwise order, starting
/// from the lexicographically smallest point. Points must be finite.
pub fn convex_hull(pts: &[HPoint]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| pts[i].to_affine().cmp(&pts[j].to_affine()));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let turn = |a: usize, b: usize, c: usize| orient(&pts[a], &pts[b], &pts[c]);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && turn(lower[lower.len() - 2], lower[lower.len() - 1], i)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && turn(upper[upper.len() - 2], upper[upper.len() - 1], i)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Strict convex position: every point is a hull vertex and no three are
/// collinear. Returns the counter-clockwise hull order when it holds.
pub fn convex_position_order(pts: &[HPoint]) -> Option<Vec<usize>> {
    if pts.iter().any(|p| !p.is_finite()) {
        return None;
    }
    let h = convex_hull(pts);
    if pts.len() >= 3 && h.len() != pts.len() {
        return None;
    }
    if pts.len() < 3 {
        let mut v: Vec<usize> = (0..pts.len()).collect();
        v.dedup_by(|a, b| pts[*a] == pts[*b]);
        return (v.len() == pts.len()).then_some(v);
    }
    Some(h)
}
