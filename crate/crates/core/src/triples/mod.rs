//! Collinear-triple hypergraphs over three labeled pointsets.

mod avoid;
mod order;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{collinear, line_through, HLine, HPoint};

pub use avoid::{avoiding_one_sided, mutually_avoiding, AvoidanceReport, AvoidanceViolation};
pub use order::{canonical_order, verify_order, OrderError, OrderViolation, Ordered, OrderingCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    A,
    B,
    C,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::A, Class::B, Class::C];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::A => "A",
            Class::B => "B",
            Class::C => "C",
        })
    }
}

/// An index triple `(a, b, c)`; ordering is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Edge {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        Edge { a, b, c }
    }

    pub fn get(&self, class: Class) -> usize {
        match class {
            Class::A => self.a,
            Class::B => self.b,
            Class::C => self.c,
        }
    }

    /// Number of vertices shared with `other`.
    pub fn shared(&self, other: &Edge) -> usize {
        usize::from(self.a == other.a) + usize::from(self.b == other.b) + usize::from(self.c == other.c)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetsError {
    #[error("set {class} contains the point {index} twice (also at {first})")]
    DuplicatePoint { class: Class, first: usize, index: usize },
    #[error("point {index} of set {class} is at infinity")]
    NotFinite { class: Class, index: usize },
    #[error("set C is flagged at infinity but point {0} is finite")]
    FiniteDirection(usize),
}

/// Three ordered pointsets. A and B are finite; C is finite unless flagged
/// as lying on the line at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSets {
    pub a: Vec<HPoint>,
    pub b: Vec<HPoint>,
    pub c: Vec<HPoint>,
    pub c_at_infinity: bool,
}

impl LabeledSets {
    pub fn new(a: Vec<HPoint>, b: Vec<HPoint>, c: Vec<HPoint>, c_at_infinity: bool) -> Result<Self, SetsError> {
        let s = LabeledSets { a, b, c, c_at_infinity };
        for class in Class::ALL {
            let pts = s.set(class);
            let mut seen = BTreeMap::new();
            for (i, p) in pts.iter().enumerate() {
                if let Some(&first) = seen.get(p) {
                    return Err(SetsError::DuplicatePoint { class, first, index: i });
                }
                seen.insert(p, i);
                let must_be_finite = class != Class::C || !c_at_infinity;
                if must_be_finite && !p.is_finite() {
                    return Err(SetsError::NotFinite { class, index: i });
                }
                if !must_be_finite && p.is_finite() {
                    return Err(SetsError::FiniteDirection(i));
                }
            }
        }
        Ok(s)
    }

    pub fn set(&self, class: Class) -> &[HPoint] {
        match class {
            Class::A => &self.a,
            Class::B => &self.b,
            Class::C => &self.c,
        }
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.a.len(), self.b.len(), self.c.len()]
    }

    pub fn point(&self, class: Class, i: usize) -> &HPoint {
        &self.set(class)[i]
    }

    pub fn edge_points(&self, e: &Edge) -> [&HPoint; 3] {
        [&self.a[e.a], &self.b[e.b], &self.c[e.c]]
    }

    pub fn is_collinear(&self, e: &Edge) -> bool {
        let [a, b, c] = self.edge_points(e);
        collinear(a, b, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("selected triple {0} is not collinear")]
    NotCollinear(Edge),
    #[error("selected triple {0} is out of range")]
    OutOfRange(Edge),
}

/// A 3-partite 3-uniform hypergraph on index ranges `0..sizes[class]`.
///
/// Edges are deduplicated and kept in lexicographic order; adjacency lists
/// hold edge ids in increasing order.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleSystem {
    sizes: [usize; 3],
    edges: Vec<Edge>,
    incidence: [Vec<Vec<usize>>; 3],
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripleSystem").field("sizes", &self.sizes).field("edges", &self.edges).finish()
    }
}

impl TripleSystem {
    /// # Panics
    /// If an edge index is out of range.
    pub fn from_edges(sizes: [usize; 3], edges: impl IntoIterator<Item = Edge>) -> Self {
        let set: BTreeSet<Edge> = edges.into_iter().collect();
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut incidence: [Vec<Vec<usize>>; 3] = core::array::from_fn(|c| alloc::vec![Vec::new(); sizes[c]]);
        for (id, e) in edges.iter().enumerate() {
            for class in Class::ALL {
                let v = e.get(class);
                assert!(v < sizes[class.index()], "edge {e} out of range for sizes {sizes:?}");
                incidence[class.index()][v].push(id);
            }
        }
        TripleSystem { sizes, edges, incidence }
    }

    pub fn empty(sizes: [usize; 3]) -> Self {
        Self::from_edges(sizes, [])
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    /// Largest class size.
    pub fn n(&self) -> usize {
        self.sizes.into_iter().max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Ids of edges containing vertex `v` of `class`.
    pub fn incident(&self, class: Class, v: usize) -> &[usize] {
        &self.incidence[class.index()][v]
    }

    pub fn degree(&self, class: Class, v: usize) -> usize {
        self.incident(class, v).len()
    }

    pub fn edge_id(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edge_id(e).is_some()
    }

    /// First pair of distinct edges sharing two or more vertices.
    pub fn linearity_violation(&self) -> Option<(Edge, Edge)> {
        let keys: [fn(&Edge) -> (usize, usize); 3] = [|e| (e.a, e.b), |e| (e.a, e.c), |e| (e.b, e.c)];
        for key in keys {
            let mut seen: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
            for e in &self.edges {
                if let Some(prev) = seen.insert(key(e), *e) {
                    return Some((prev, *e));
                }
            }
        }
        None
    }

    pub fn is_linear(&self) -> bool {
        self.linearity_violation().is_none()
    }

    pub fn restrict(&self, mut keep: impl FnMut(&Edge) -> bool) -> Self {
        TripleSystem::from_edges(self.sizes, self.edges.iter().copied().filter(|e| keep(e)))
    }

    /// Renames vertices; `new_of[class][old] = new`.
    pub fn relabel(&self, new_of: &[Vec<usize>; 3]) -> Self {
        TripleSystem::from_edges(
            self.sizes,
            self.edges.iter().map(|e| Edge::new(new_of[0][e.a], new_of[1][e.b], new_of[2][e.c])),
        )
    }
}

/// All collinear `(a, b, c)` triples, via a per-`a` index of C-points by the
/// line joining them to `a`.
pub fn build_triples(s: &LabeledSets) -> TripleSystem {
    let nc = s.c.len();
    let mut edges = Vec::new();
    for (i, a) in s.a.iter().enumerate() {
        let mut by_line: BTreeMap<HLine, Vec<usize>> = BTreeMap::new();
        // C-points coinciding with `a` lie on every line through it.
        let mut at_a = Vec::new();
        for (k, c) in s.c.iter().enumerate() {
            match line_through(a, c) {
                Ok(l) => by_line.entry(l).or_default().push(k),
                Err(_) => at_a.push(k),
            }
        }
        for (j, b) in s.b.iter().enumerate() {
            match line_through(a, b) {
                Ok(l) => {
                    let hits = by_line.get(&l).map(Vec::as_slice).unwrap_or(&[]);
                    edges.extend(hits.iter().chain(&at_a).map(|&k| Edge::new(i, j, k)));
                }
                Err(_) => edges.extend((0..nc).map(|k| Edge::new(i, j, k))),
            }
        }
    }
    TripleSystem::from_edges(s.sizes(), edges)
}

/// The O(n³) definition, kept as an oracle.
pub fn build_triples_brute(s: &LabeledSets) -> TripleSystem {
    let mut edges = Vec::new();
    for i in 0..s.a.len() {
        for j in 0..s.b.len() {
            for k in 0..s.c.len() {
                if collinear(&s.a[i], &s.b[j], &s.c[k]) {
                    edges.push(Edge::new(i, j, k));
                }
            }
        }
    }
    TripleSystem::from_edges(s.sizes(), edges)
}

pub fn build_triples_from_selection(s: &LabeledSets, selection: &[Edge]) -> Result<TripleSystem, TripleError> {
    let [na, nb, nc] = s.sizes();
    for e in selection {
        if e.a >= na || e.b >= nb || e.c >= nc {
            return Err(TripleError::OutOfRange(*e));
        }
        if !s.is_collinear(e) {
            return Err(TripleError::NotCollinear(*e));
        }
    }
    Ok(TripleSystem::from_edges(s.sizes(), selection.iter().copied()))
}
