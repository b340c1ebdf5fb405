use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::triples::{Class, Edge, TripleSystem};

use super::params::{partition_blocks, BlockPartition, SearchParams};
use super::prune::{prune, PruneReport};

/// Three edges on six vertices: `(a*, b*, c₁)`, `(a*, b₁, c*)`, `(a₁, b*, c*)`.
/// Starred vertices lie on two edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config63 {
    /// `[e1, e2, e3]` in the order above.
    pub edges: [Edge; 3],
}

impl Config63 {
    /// Builds the configuration from three edges in any order, checking the
    /// intersection pattern.
    pub fn from_edges(edges: [Edge; 3]) -> Option<Self> {
        let [x, y, z] = edges;
        if x.shared(&y) != 1 || y.shared(&z) != 1 || x.shared(&z) != 1 {
            return None;
        }
        let verts: [BTreeSet<usize>; 3] =
            Class::ALL.map(|c| edges.iter().map(|e| e.get(c)).collect());
        if verts.iter().any(|v| v.len() != 2) {
            return None;
        }
        // e1 holds a* and b*: the A- and B-vertices each shared with another edge.
        let double = |c: Class| -> usize {
            let v: Vec<usize> = edges.iter().map(|e| e.get(c)).collect();
            if v[0] == v[1] || v[0] == v[2] {
                v[0]
            } else {
                v[1]
            }
        };
        let (a, b, c) = (double(Class::A), double(Class::B), double(Class::C));
        let find = |p: &dyn Fn(&Edge) -> bool| edges.iter().copied().find(|e| p(e));
        Some(Config63 {
            edges: [
                find(&|e| e.a == a && e.b == b)?,
                find(&|e| e.a == a && e.c == c)?,
                find(&|e| e.b == b && e.c == c)?,
            ],
        })
    }

    pub fn double(&self, class: Class) -> usize {
        match class {
            Class::A => self.edges[0].a,
            Class::B => self.edges[0].b,
            Class::C => self.edges[1].c,
        }
    }

    pub fn single(&self, class: Class) -> usize {
        match class {
            Class::A => self.edges[2].a,
            Class::B => self.edges[1].b,
            Class::C => self.edges[0].c,
        }
    }

    /// `(double, single)` for a class.
    pub fn pair(&self, class: Class) -> (usize, usize) {
        (self.double(class), self.single(class))
    }

    /// The two vertices of a class, smaller first.
    pub fn sorted_pair(&self, class: Class) -> (usize, usize) {
        let (x, y) = self.pair(class);
        (x.min(y), x.max(y))
    }

    pub fn gap(&self, class: Class) -> usize {
        let (x, y) = self.pair(class);
        x.abs_diff(y)
    }

    pub fn sorted_edges(&self) -> [Edge; 3] {
        let mut e = self.edges;
        e.sort();
        e
    }
}

/// `max(|i−j|, |k−ℓ|, |u−v|) ≤ N`.
pub fn is_skinny(c: &Config63, n: usize) -> bool {
    Class::ALL.iter().all(|&cl| c.gap(cl) <= n)
}

/// Restricts a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// A-vertices in block `a_block`, C-vertices in block `c_block`.
    BlockPair { partition: BlockPartition, a_block: usize, c_block: usize },
    /// Every vertex must belong to the given sets.
    Vertices { a: BTreeSet<usize>, b: BTreeSet<usize>, c: BTreeSet<usize> },
}

impl Scope {
    fn admits(&self, e: &Edge) -> bool {
        match self {
            Scope::BlockPair { partition, a_block, c_block } => {
                partition.a_block(e.a) == *a_block && partition.c_block(e.c) == *c_block
            }
            Scope::Vertices { a, b, c } => a.contains(&e.a) && b.contains(&e.b) && c.contains(&e.c),
        }
    }
}

/// All (6,3) configurations inside the scope, in increasing order of their
/// edge triples `[e1, e2, e3]`.
pub fn find_663(t: &TripleSystem, scope: Option<&Scope>) -> Vec<Config63> {
    let sub;
    let t = match scope {
        Some(s) => {
            sub = t.restrict(|e| s.admits(e));
            &sub
        }
        None => t,
    };
    let mut out = Vec::new();
    for e1 in t.edges() {
        for &id2 in t.incident(Class::A, e1.a) {
            let e2 = t.edge(id2);
            if e2.b == e1.b || e2.c == e1.c {
                continue;
            }
            // e3 holds b* = e1.b and c* = e2.c.
            for &id3 in t.incident(Class::B, e1.b) {
                let e3 = t.edge(id3);
                if e3.c == e2.c && e3.a != e1.a {
                    out.push(Config63 { edges: [*e1, e2, e3] });
                }
            }
        }
    }
    out.sort();
    out
}

/// Which side of the B-pair the double point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleSide {
    Smaller,
    Larger,
}

#[derive(Clone, Debug)]
pub struct SkinnyResult {
    pub configs: Vec<Config63>,
    pub pruned: TripleSystem,
    pub prune_report: PruneReport,
    /// Configurations found per block pair before selection.
    pub found: usize,
    /// Selected `(double, single)`-agnostic vertex pair per A-block and C-block.
    pub a_pairs: BTreeMap<usize, (usize, usize)>,
    pub c_pairs: BTreeMap<usize, (usize, usize)>,
    pub side: DoubleSide,
}

fn block_pairs_of(range: core::ops::Range<usize>) -> Vec<(usize, usize)> {
    let v: Vec<usize> = range.collect();
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push((v[i], v[j]));
        }
    }
    out
}

/// Picks, per block, the pair carrying the most configurations (ties: the
/// smallest pair).
fn best_pairs(configs: &[Config63], class: Class, block: impl Fn(usize) -> usize) -> BTreeMap<usize, (usize, usize)> {
    let mut counts: BTreeMap<(usize, (usize, usize)), usize> = BTreeMap::new();
    for c in configs {
        let p = c.sorted_pair(class);
        *counts.entry((block(p.0), p)).or_default() += 1;
    }
    let mut best: BTreeMap<usize, ((usize, usize), usize)> = BTreeMap::new();
    for ((blk, p), n) in counts {
        let e = best.entry(blk).or_insert((p, n));
        if n > e.1 {
            *e = (p, n);
        }
    }
    best.into_iter().map(|(b, (p, _))| (b, p)).collect()
}

/// Prune, search each block pair exhaustively, keep configurations on one
/// selected vertex pair per A-block and per C-block, keep the majority side
/// of the B double point, drop B-pairs farther apart than `N`, then keep an
/// edge-disjoint subfamily greedily.
pub fn find_skinny_663(t: &TripleSystem, params: &SearchParams, seed: u64) -> SkinnyResult {
    let (pruned, prune_report) = prune(t, params);
    let part = partition_blocks(&pruned, params.block_size).expect("validated block size");

    let mut blocks: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in pruned.edges() {
        blocks.insert((part.a_block(e.a), part.c_block(e.c)));
    }
    let mut all = Vec::new();
    for (i, j) in blocks {
        let scope = Scope::BlockPair { partition: part.clone(), a_block: i, c_block: j };
        all.extend(find_663(&pruned, Some(&scope)));
    }
    let found = all.len();

    let (a_pairs, c_pairs) = if params.exhaustive {
        let a = best_pairs(&all, Class::A, |i| part.a_block(i));
        let on_a: Vec<Config63> = all
            .iter()
            .copied()
            .filter(|c| a.get(&part.a_block(c.double(Class::A))) == Some(&c.sorted_pair(Class::A)))
            .collect();
        (a, best_pairs(&on_a, Class::C, |k| part.c_block(k)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |n_blocks: usize, range: &dyn Fn(usize) -> core::ops::Range<usize>| {
            let mut m = BTreeMap::new();
            for blk in 0..n_blocks {
                let pairs = block_pairs_of(range(blk));
                if let Some(p) = pairs.choose(&mut rng) {
                    m.insert(blk, *p);
                }
            }
            m
        };
        let a = pick(part.a_blocks(), &|b| part.a_range(b));
        let c = pick(part.c_blocks(), &|b| part.c_range(b));
        (a, c)
    };
    let selected: Vec<Config63> = all
        .into_iter()
        .filter(|c| {
            a_pairs.get(&part.a_block(c.double(Class::A))) == Some(&c.sorted_pair(Class::A))
                && c_pairs.get(&part.c_block(c.double(Class::C))) == Some(&c.sorted_pair(Class::C))
        })
        .collect();

    let smaller = selected.iter().filter(|c| c.double(Class::B) < c.single(Class::B)).count();
    let side = if 2 * smaller >= selected.len() { DoubleSide::Smaller } else { DoubleSide::Larger };
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    let mut configs = Vec::new();
    for c in selected {
        let on_side = (c.double(Class::B) < c.single(Class::B)) == (side == DoubleSide::Smaller);
        if !on_side || c.gap(Class::B) > params.skinny_bound {
            continue;
        }
        if c.edges.iter().any(|e| used.contains(e)) {
            continue;
        }
        used.extend(c.edges);
        configs.push(c);
    }
    SkinnyResult { configs, pruned, prune_report, found, a_pairs, c_pairs, side }
}

/// Repeatedly keeps the highest-count pair (ties: smallest pair) and drops
/// every pair sharing an endpoint with it. Pairs farther apart than `n` are
/// outside the procedure's domain and are ignored.
pub fn greedy_pair_select(pairs: &[((usize, usize), usize)], n: usize) -> Vec<((usize, usize), usize)> {
    let mut pool: Vec<((usize, usize), usize)> =
        pairs.iter().copied().filter(|((x, y), _)| x.abs_diff(*y) <= n).collect();
    pool.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    let mut taken: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    for (p, n) in pool {
        if taken.contains(&p.0) || taken.contains(&p.1) {
            continue;
        }
        taken.insert(p.0);
        taken.insert(p.1);
        out.push((p, n));
    }
    out
}
