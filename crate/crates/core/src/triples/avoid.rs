use crate::geometry::{line_meets_hull, line_through};

use super::{Class, LabeledSets};

/// A line through two points of `line_set` that meets the hull of `hull_set`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvoidanceViolation {
    pub line_set: Class,
    pub pair: (usize, usize),
    pub hull_set: Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvoidanceReport {
    pub holds: bool,
    pub violation: Option<AvoidanceViolation>,
}

impl AvoidanceReport {
    fn from(v: Option<AvoidanceViolation>) -> Self {
        AvoidanceReport { holds: v.is_none(), violation: v }
    }
}

/// Checks one (lines of X, hull of Y) condition. Directions at infinity have
/// no finite hull and their common line never meets a finite hull, so any
/// condition involving C at infinity holds vacuously.
fn check(s: &LabeledSets, line_set: Class, hull_set: Class) -> Option<AvoidanceViolation> {
    if s.c_at_infinity && (line_set == Class::C || hull_set == Class::C) {
        return None;
    }
    let pts = s.set(line_set);
    let hull = s.set(hull_set);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = line_through(&pts[i], &pts[j]).expect("distinct points in a set");
            if line_meets_hull(&l, hull) {
                return Some(AvoidanceViolation { line_set, pair: (i, j), hull_set });
            }
        }
    }
    None
}

/// No line through two points of one set meets the hull of another set.
pub fn mutually_avoiding(s: &LabeledSets) -> AvoidanceReport {
    use Class::*;
    let order = [(A, B), (A, C), (B, A), (B, C), (C, A), (C, B)];
    AvoidanceReport::from(order.into_iter().find_map(|(x, y)| check(s, x, y)))
}

/// The weaker hypothesis: A and C avoid each other, and lines of A and of C
/// avoid the hull of B.
pub fn avoiding_one_sided(s: &LabeledSets) -> AvoidanceReport {
    use Class::*;
    let order = [(A, C), (C, A), (A, B), (C, B)];
    AvoidanceReport::from(order.into_iter().find_map(|(x, y)| check(s, x, y)))
}
