//! Floating-point direction counting for inputs without rational
//! coordinates, such as regular polygons.

use alloc::vec::Vec;
use core::f64::consts::PI;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type ApproxPoint = (f64, f64);

/// Angle of the line `pq` in `[0, π)`.
pub fn direction_angle(p: ApproxPoint, q: ApproxPoint) -> f64 {
    let a = libm::atan2(q.1 - p.1, q.0 - p.0);
    let a = if a < 0.0 { a + PI } else { a };
    if a >= PI {
        a - PI
    } else {
        a
    }
}

/// Number of distinct directions among `pairs`, merging angles closer than
/// `tol` (including across the wrap-around at π).
pub fn count_directions_approx(pts: &[ApproxPoint], pairs: &[(usize, usize)], tol: f64) -> usize {
    let mut angles: Vec<f64> = pairs.iter().map(|&(i, j)| direction_angle(pts[i], pts[j])).collect();
    if angles.is_empty() {
        return 0;
    }
    angles.sort_by(f64::total_cmp);
    let mut count = 1;
    for w in angles.windows(2) {
        if w[1] - w[0] > tol {
            count += 1;
        }
    }
    if count > 1 && angles[0] + PI - angles[angles.len() - 1] <= tol {
        count -= 1;
    }
    count
}

fn cross(o: ApproxPoint, a: ApproxPoint, b: ApproxPoint) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull order when the points are in strict convex
/// position (every turn exceeds `tol` in magnitude), `None` otherwise.
pub fn convex_position_order_approx(pts: &[ApproxPoint], tol: f64) -> Option<Vec<usize>> {
    let n = pts.len();
    if n < 3 {
        return Some((0..n).collect());
    }
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        let a = libm::atan2(pts[i].1 - cy, pts[i].0 - cx);
        let b = libm::atan2(pts[j].1 - cy, pts[j].0 - cx);
        a.total_cmp(&b)
    });
    for k in 0..n {
        let (o, a, b) = (pts[idx[k]], pts[idx[(k + 1) % n]], pts[idx[(k + 2) % n]]);
        if cross(o, a, b) <= tol {
            return None;
        }
    }
    Some(idx)
}

/// Vertices of the regular `n`-gon on the unit circle.
pub fn regular_ngon(n: usize) -> Vec<ApproxPoint> {
    (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            (libm::cos(t), libm::sin(t))
        })
        .collect()
}
