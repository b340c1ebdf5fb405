use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::triples::{Class, Edge, TripleSystem};

use super::params::SearchParams;
use super::six_three::{find_663, find_skinny_663, greedy_pair_select, Config63, SkinnyResult};

/// Six edges meeting like the rows and columns of a 3×3 board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TicTacToe {
    pub rows: [Edge; 3],
    pub cols: [Edge; 3],
}

impl TicTacToe {
    /// Rows pairwise disjoint, columns pairwise disjoint, every row meets
    /// every column in exactly one vertex, and all six edges are in `t`.
    pub fn verify(&self, t: &TripleSystem) -> bool {
        let disjoint = |v: &[Edge; 3]| (0..3).all(|i| (i + 1..3).all(|j| v[i].shared(&v[j]) == 0));
        disjoint(&self.rows)
            && disjoint(&self.cols)
            && self.rows.iter().all(|r| self.cols.iter().all(|c| r.shared(c) == 1))
            && self.rows.iter().chain(&self.cols).all(|e| t.contains(e))
    }

    /// Vertices per class, sorted.
    pub fn vertices(&self, class: Class) -> Vec<usize> {
        let s: BTreeSet<usize> = self.rows.iter().map(|e| e.get(class)).collect();
        s.into_iter().collect()
    }
}

/// Nine edges on twelve vertices (four per class), assembled from a (6,3)
/// of pair-vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config129 {
    pub edges: [Edge; 9],
}

impl Config129 {
    pub fn vertex_count(&self) -> usize {
        Class::ALL
            .iter()
            .map(|&c| self.edges.iter().map(|e| e.get(c)).collect::<BTreeSet<_>>().len())
            .sum()
    }

    pub fn verify(&self, t: &TripleSystem) -> bool {
        let distinct: BTreeSet<Edge> = self.edges.iter().copied().collect();
        distinct.len() == 9 && self.vertex_count() == 12 && self.edges.iter().all(|e| t.contains(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TttStrategy {
    Direct,
    Pipeline,
    /// Direct search up to [`DIRECT_LIMIT`] edges, the pipeline beyond.
    Auto,
}

pub const DIRECT_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct TttResult {
    pub ttt: TicTacToe,
    pub config129: Option<Config129>,
    pub strategy: TttStrategy,
}

/// Exhaustive search: fix a row, try every column through each of its three
/// vertices, and look up the two remaining rows.
pub fn find_tictactoe_direct(t: &TripleSystem) -> Option<TicTacToe> {
    for r1 in t.edges() {
        for &ia in t.incident(Class::A, r1.a) {
            let ea = t.edge(ia);
            if ea == *r1 {
                continue;
            }
            for &ib in t.incident(Class::B, r1.b) {
                let eb = t.edge(ib);
                if eb == *r1 || eb.shared(&ea) != 0 {
                    continue;
                }
                for &ic in t.incident(Class::C, r1.c) {
                    let ec = t.edge(ic);
                    if ec == *r1 || ec.shared(&ea) != 0 || ec.shared(&eb) != 0 {
                        continue;
                    }
                    // ea = (a, b', c'), eb = (a'', b, c''), ec = (a''', b''', c)
                    let r2 = Edge::new(ec.a, ea.b, eb.c);
                    let r3 = Edge::new(eb.a, ec.b, ea.c);
                    if t.contains(&r2) && t.contains(&r3) {
                        let ttt = TicTacToe { rows: [*r1, r2, r3], cols: [ea, eb, ec] };
                        if ttt.verify(t) {
                            return Some(ttt);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Second-level system over vertex pairs: one edge per skinny configuration
/// whose B-pair survives greedy selection.
fn second_level(skinny: &SkinnyResult, n: usize) -> (TripleSystem, BTreeMap<Edge, Config63>) {
    let mut b_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in &skinny.configs {
        *b_counts.entry(c.sorted_pair(Class::B)).or_default() += 1;
    }
    let pool: Vec<((usize, usize), usize)> = b_counts.into_iter().collect();
    let keep: BTreeSet<(usize, usize)> = greedy_pair_select(&pool, n).into_iter().map(|(p, _)| p).collect();

    let mut ids: [BTreeMap<(usize, usize), usize>; 3] = Default::default();
    let mut level2: BTreeMap<Edge, Config63> = BTreeMap::new();
    for c in skinny.configs.iter().filter(|c| keep.contains(&c.sorted_pair(Class::B))) {
        let mut id = |cl: Class| {
            let m = &mut ids[cl.index()];
            let next = m.len();
            *m.entry(c.sorted_pair(cl)).or_insert(next)
        };
        let e = Edge::new(id(Class::A), id(Class::B), id(Class::C));
        level2.entry(e).or_insert(*c);
    }
    let sizes = [ids[0].len(), ids[1].len(), ids[2].len()];
    (TripleSystem::from_edges(sizes, level2.keys().copied()), level2)
}

/// The skinny-(6,3) pipeline followed by a second-level (6,3) search; each
/// second-level hit spans a (12,9) that is searched directly.
pub fn find_tictactoe_pipeline(t: &TripleSystem, params: &SearchParams, seed: u64) -> Option<TttResult> {
    let skinny = find_skinny_663(t, params, seed);
    let (sys2, back) = second_level(&skinny, params.skinny_bound);
    for c2 in find_663(&sys2, None) {
        let mut edges = Vec::with_capacity(9);
        for e2 in c2.edges {
            edges.extend(back[&e2].edges);
        }
        let Ok(edges) = <[Edge; 9]>::try_from(edges) else { continue };
        let c129 = Config129 { edges };
        if !c129.verify(t) {
            continue;
        }
        let sub = TripleSystem::from_edges(t.sizes(), c129.edges);
        if let Some(ttt) = find_tictactoe_direct(&sub) {
            if ttt.verify(t) {
                return Some(TttResult { ttt, config129: Some(c129), strategy: TttStrategy::Pipeline });
            }
        }
    }
    None
}

pub fn find_tictactoe(t: &TripleSystem, params: &SearchParams, seed: u64, strategy: TttStrategy) -> Option<TttResult> {
    if t.len() < 6 {
        return None;
    }
    let direct = |t| find_tictactoe_direct(t).map(|ttt| TttResult { ttt, config129: None, strategy: TttStrategy::Direct });
    match strategy {
        TttStrategy::Direct => direct(t),
        TttStrategy::Pipeline => find_tictactoe_pipeline(t, params, seed),
        TttStrategy::Auto if t.len() <= DIRECT_LIMIT => direct(t),
        TttStrategy::Auto => find_tictactoe_pipeline(t, params, seed),
    }
}
