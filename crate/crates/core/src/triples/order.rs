use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::geometry::{orient, HPoint, Orientation};

use super::{Class, Edge, LabeledSets, TripleSystem};

/// A pair of edges sharing a vertex that breaks one of the three
/// monotonicity rules (numbered 1, 2, 3 for a shared A-, B-, C-vertex).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderViolation {
    pub rule: u8,
    pub first: Edge,
    pub second: Edge,
}

fn rule_broken(rule: u8, e: &Edge, f: &Edge) -> bool {
    match rule {
        // shared a: j1 < j2 ⇒ k1 < k2
        1 => e.b < f.b && e.c >= f.c,
        // shared b: i1 > i2 ⇒ k1 < k2
        2 => e.a > f.a && e.c >= f.c,
        // shared c: i1 < i2 ⇒ j1 < j2
        _ => e.a < f.a && e.b >= f.b,
    }
}

/// Brute force over all ordered pairs of edges sharing a vertex.
pub fn verify_order(t: &TripleSystem) -> Result<(), OrderViolation> {
    for (rule, class) in [(1u8, Class::A), (2, Class::B), (3, Class::C)] {
        for v in 0..t.sizes()[class.index()] {
            let ids = t.incident(class, v);
            for &x in ids {
                for &y in ids {
                    let (e, f) = (t.edge(x), t.edge(y));
                    if x != y && rule_broken(rule, &e, &f) {
                        return Err(OrderViolation { rule, first: e, second: f });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Permutations that produced a verified ordering; `perm[class][new] = old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingCertificate {
    pub perm: [Vec<usize>; 3],
    /// Human-readable description of the comparator combination used.
    pub strategy: String,
    pub edges_checked: usize,
}

#[derive(Clone, Debug)]
pub struct Ordered {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    pub certificate: OrderingCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("no candidate ordering satisfies the monotonicity rules ({tried} combinations tried)")]
    NoValidOrdering { tried: usize },
}

struct Candidate {
    name: String,
    perm: Vec<usize>,
}

fn sorted_by(n: usize, mut cmp: impl FnMut(usize, usize) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| cmp(i, j).then(i.cmp(&j)));
    idx
}

fn finite_candidates(pts: &[HPoint], views: &[(String, &HPoint)]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (name, v) in views {
        let perm = sorted_by(pts.len(), |i, j| match orient(v, &pts[i], &pts[j]) {
            Orientation::CounterClockwise => Ordering::Less,
            Orientation::Clockwise => Ordering::Greater,
            Orientation::Collinear => Ordering::Equal,
        });
        out.push(Candidate { name: alloc::format!("angle around {name}"), perm });
    }
    let aff: Vec<_> = pts.iter().map(|p| p.to_affine().expect("finite")).collect();
    out.push(Candidate { name: "x".into(), perm: sorted_by(pts.len(), |i, j| aff[i].cmp(&aff[j])) });
    out.push(Candidate {
        name: "y".into(),
        perm: sorted_by(pts.len(), |i, j| (&aff[i].1, &aff[i].0).cmp(&(&aff[j].1, &aff[j].0))),
    });
    out
}

/// Orders of directions: by cross product of representatives oriented along
/// an incident edge (from its A-point to its B-point), and by slope.
fn direction_candidates(s: &LabeledSets, t: &TripleSystem) -> Vec<Candidate> {
    let reps: Vec<[BigInt; 2]> = (0..s.c.len())
        .map(|k| {
            let d = s.c[k].coords();
            let mut v = [d[0].clone(), d[1].clone()];
            if let Some(&id) = t.incident(Class::C, k).first() {
                let e = t.edge(id);
                let (ax, ay) = s.a[e.a].to_affine().expect("finite");
                let (bx, by) = s.b[e.b].to_affine().expect("finite");
                let dot = (bx - ax) * crate::Rat::from_integer(v[0].clone())
                    + (by - ay) * crate::Rat::from_integer(v[1].clone());
                if dot.is_negative() {
                    v = [-&v[0], -&v[1]];
                }
            }
            v
        })
        .collect();
    let cross = sorted_by(s.c.len(), |i, j| {
        let c = &reps[i][0] * &reps[j][1] - &reps[i][1] * &reps[j][0];
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    // slope dy/dx, vertical last
    let slope = sorted_by(s.c.len(), |i, j| {
        let (a, b) = (s.c[i].coords(), s.c[j].coords());
        match (a[0].is_positive(), b[0].is_positive()) {
            (true, true) => (&a[1] * &b[0]).cmp(&(&b[1] * &a[0])),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => Ordering::Equal,
        }
    });
    alloc::vec![
        Candidate { name: "direction turn".into(), perm: cross },
        Candidate { name: "slope".into(), perm: slope },
    ]
}

fn candidates_for(s: &LabeledSets, t: &TripleSystem, class: Class) -> Vec<Candidate> {
    if class == Class::C && s.c_at_infinity {
        return direction_candidates(s, t);
    }
    let mut views = Vec::new();
    for other in Class::ALL.into_iter().filter(|&c| c != class) {
        let pts = s.set(other);
        for (pos, p) in [("first", pts.first()), ("last", pts.last())] {
            if let Some(p) = p.filter(|p| p.is_finite()) {
                views.push((alloc::format!("{pos} {other}"), p));
            }
        }
    }
    finite_candidates(s.set(class), &views)
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

fn apply(s: &LabeledSets, t: &TripleSystem, perm: &[Vec<usize>; 3]) -> (LabeledSets, TripleSystem) {
    let pick = |pts: &[HPoint], p: &[usize]| p.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>();
    let sets = LabeledSets {
        a: pick(&s.a, &perm[0]),
        b: pick(&s.b, &perm[1]),
        c: pick(&s.c, &perm[2]),
        c_at_infinity: s.c_at_infinity,
    };
    let new_of = [inverse(&perm[0]), inverse(&perm[1]), inverse(&perm[2])];
    (sets, t.relabel(&new_of))
}

/// Tries angular, axis and slope comparators per set, each combination under
/// all eight reversal patterns, and returns the first that verifies.
pub fn canonical_order(s: &LabeledSets, t: &TripleSystem) -> Result<Ordered, OrderError> {
    let cands: [Vec<Candidate>; 3] = Class::ALL.map(|c| candidates_for(s, t, c));
    let mut tried = 0;
    for ca in &cands[0] {
        for cb in &cands[1] {
            for cc in &cands[2] {
                for flips in 0u8..8 {
                    tried += 1;
                    let perm: [Vec<usize>; 3] = [ca, cb, cc].map(|c| c.perm.clone());
                    let mut perm = perm;
                    for (bit, p) in perm.iter_mut().enumerate() {
                        if flips & (1 << bit) != 0 {
                            p.reverse();
                        }
                    }
                    let (sets, triples) = apply(s, t, &perm);
                    if verify_order(&triples).is_ok() {
                        let rev = |bit: u8| if flips & (1 << bit) != 0 { " reversed" } else { "" };
                        let strategy = alloc::format!(
                            "A: {}{}; B: {}{}; C: {}{}",
                            ca.name,
                            rev(0),
                            cb.name,
                            rev(1),
                            cc.name,
                            rev(2)
                        );
                        let certificate = OrderingCertificate { perm, strategy, edges_checked: triples.len() };
                        return Ok(Ordered { sets, triples, certificate });
                    }
                }
            }
        }
    }
    Err(OrderError::NoValidOrdering { tried })
}
