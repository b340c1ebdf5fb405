use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::triples::{Edge, TripleSystem};

use super::params::BlockPartition;

/// `k` edges through one B-point between one A-block and one C-block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KBranch {
    pub center: usize,
    pub a_block: usize,
    pub c_block: usize,
    /// Sorted by A-index.
    pub edges: Vec<Edge>,
}

impl KBranch {
    pub fn a_tuple(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().map(|e| e.a).collect();
        v.sort();
        v
    }

    pub fn c_tuple(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().map(|e| e.c).collect();
        v.sort();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBranches {
    pub branches: Vec<KBranch>,
    /// Edge count per `(b, a_block, c_block)`.
    pub counts: BTreeMap<(usize, usize, usize), usize>,
}

/// One branch per `(b, i, j)` with at least `k` edges: the `k` edges with
/// the smallest A-indices.
pub fn find_k_branches(t: &TripleSystem, part: &BlockPartition, k: usize) -> KBranches {
    let mut groups: BTreeMap<(usize, usize, usize), Vec<Edge>> = BTreeMap::new();
    for e in t.edges() {
        groups.entry((e.b, part.a_block(e.a), part.c_block(e.c))).or_default().push(*e);
    }
    let mut branches = Vec::new();
    let mut counts = BTreeMap::new();
    for ((b, i, j), mut edges) in groups {
        counts.insert((b, i, j), edges.len());
        if k >= 1 && edges.len() >= k {
            edges.sort_by_key(|e| (e.a, e.c));
            edges.truncate(k);
            branches.push(KBranch { center: b, a_block: i, c_block: j, edges });
        }
    }
    KBranches { branches, counts }
}

/// The distinct A-tuples and C-tuples used by the branches, sorted.
pub fn branch_tuples(branches: &[KBranch]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let a: BTreeSet<Vec<usize>> = branches.iter().map(KBranch::a_tuple).collect();
    let c: BTreeSet<Vec<usize>> = branches.iter().map(KBranch::c_tuple).collect();
    (a.into_iter().collect(), c.into_iter().collect())
}

/// A bipartite graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<BTreeSet<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = alloc::vec![BTreeSet::new(); left];
        for (l, r) in edges {
            assert!(l < left && r < right, "edge ({l}, {r}) out of range");
            adj[l].insert(r);
        }
        BipartiteGraph { left, right, adj }
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].contains(&r)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum()
    }
}

/// Branch graph plus, per edge, the first branch realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchGraph {
    pub graph: BipartiteGraph,
    pub a_tuples: Vec<Vec<usize>>,
    pub c_tuples: Vec<Vec<usize>>,
    pub witness: BTreeMap<(usize, usize), usize>,
}

/// An A-tuple and a C-tuple are adjacent iff some branch uses exactly them.
pub fn branch_bipartite_graph(branches: &[KBranch], a_tuples: &[Vec<usize>], c_tuples: &[Vec<usize>]) -> BranchGraph {
    let a_index: BTreeMap<&Vec<usize>, usize> = a_tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let c_index: BTreeMap<&Vec<usize>, usize> = c_tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut witness = BTreeMap::new();
    for (bi, br) in branches.iter().enumerate() {
        if let (Some(&l), Some(&r)) = (a_index.get(&br.a_tuple()), c_index.get(&br.c_tuple())) {
            witness.entry((l, r)).or_insert(bi);
        }
    }
    let graph = BipartiteGraph::new(a_tuples.len(), c_tuples.len(), witness.keys().copied());
    BranchGraph { graph, a_tuples: a_tuples.to_vec(), c_tuples: c_tuples.to_vec(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

fn extend(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
    next: usize,
    chosen: &mut Vec<usize>,
    common: &BTreeSet<usize>,
) -> Option<Biclique> {
    if chosen.len() == s {
        return Some(Biclique { left: chosen.clone(), right: common.iter().copied().take(t).collect() });
    }
    for l in next..g.left {
        if g.left - l < s - chosen.len() {
            break;
        }
        if g.adj[l].len() < t {
            continue;
        }
        let inter: BTreeSet<usize> = common.intersection(&g.adj[l]).copied().collect();
        if inter.len() < t {
            continue;
        }
        chosen.push(l);
        if let Some(b) = extend(g, s, t, l + 1, chosen, &inter) {
            return Some(b);
        }
        chosen.pop();
    }
    None
}

/// Branch and bound over increasing left subsets, carrying the common
/// neighbourhood. Returns the first `K_{s,t}` found.
pub fn find_biclique(g: &BipartiteGraph, s: usize, t: usize) -> Option<Biclique> {
    if s == 0 || t == 0 {
        return None;
    }
    let all: BTreeSet<usize> = (0..g.right).collect();
    extend(g, s, t, 0, &mut Vec::new(), &all)
}

/// How C-blocks are labelled relative to increasing index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockOrientation {
    Ascending,
    Descending,
}

/// Blocks `A_1..A_k`, `C_1..C_k` and centres `b_{i,j}` such that
/// `(A_i[ℓ], b_{i,j}, C_j[k−1−ℓ])` is an edge for all `i, j, ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSystem {
    pub k: usize,
    pub a_blocks: Vec<Vec<usize>>,
    pub c_blocks: Vec<Vec<usize>>,
    pub centers: Vec<Vec<usize>>,
    pub orientation: BlockOrientation,
}

impl KSystem {
    pub fn edge(&self, i: usize, j: usize, l: usize) -> Edge {
        Edge::new(self.a_blocks[i][l], self.centers[i][j], self.c_blocks[j][self.k - 1 - l])
    }

    /// All `k³` edges in `(i, j, ℓ)` order.
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.k;
        (0..k).flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l)))).map(|(i, j, l)| self.edge(i, j, l)).collect()
    }

    /// First `(i, j, ℓ)` whose edge is missing from `t`.
    pub fn verify(&self, t: &TripleSystem) -> Result<(), (usize, usize, usize)> {
        for i in 0..self.k {
            for j in 0..self.k {
                for l in 0..self.k {
                    if !t.contains(&self.edge(i, j, l)) {
                        return Err((i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn distinct_points(&self) -> usize {
        let a: BTreeSet<usize> = self.a_blocks.iter().flatten().copied().collect();
        let b: BTreeSet<usize> = self.centers.iter().flatten().copied().collect();
        let c: BTreeSet<usize> = self.c_blocks.iter().flatten().copied().collect();
        a.len() + b.len() + c.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KSystemError {
    #[error("biclique is {0}x{1}, expected a square of order k")]
    Shape(usize, usize),
    #[error("biclique pair ({0}, {1}) has no branch")]
    NoBranch(usize, usize),
    #[error("missing edge for (i, j, l) = ({i}, {j}, {l})")]
    MissingEdge { i: usize, j: usize, l: usize },
}

/// Builds the k-system from a `k × k` biclique of the branch graph and
/// verifies all `k³` edges against `t`, trying ascending then descending
/// C-block labelling.
pub fn assemble_k_system(bic: &Biclique, bg: &BranchGraph, branches: &[KBranch], t: &TripleSystem) -> Result<KSystem, KSystemError> {
    let k = bic.left.len();
    if bic.right.len() != k || k == 0 {
        return Err(KSystemError::Shape(bic.left.len(), bic.right.len()));
    }
    let a_blocks: Vec<Vec<usize>> = bic.left.iter().map(|&l| bg.a_tuples[l].clone()).collect();
    let c_asc: Vec<Vec<usize>> = bic.right.iter().map(|&r| bg.c_tuples[r].clone()).collect();
    if a_blocks.iter().chain(&c_asc).any(|b| b.len() != k) {
        return Err(KSystemError::Shape(k, k));
    }
    let mut centers = alloc::vec![alloc::vec![0; k]; k];
    for (i, &l) in bic.left.iter().enumerate() {
        for (j, &r) in bic.right.iter().enumerate() {
            let &bi = bg.witness.get(&(l, r)).ok_or(KSystemError::NoBranch(l, r))?;
            centers[i][j] = branches[bi].center;
        }
    }
    let asc = KSystem { k, a_blocks, c_blocks: c_asc, centers, orientation: BlockOrientation::Ascending };
    let first_missing = match asc.verify(t) {
        Ok(()) => return Ok(asc),
        Err(m) => m,
    };
    let desc = KSystem {
        c_blocks: asc.c_blocks.iter().map(|b| b.iter().rev().copied().collect()).collect(),
        orientation: BlockOrientation::Descending,
        ..asc
    };
    match desc.verify(t) {
        Ok(()) => Ok(desc),
        Err(_) => Err(KSystemError::MissingEdge { i: first_missing.0, j: first_missing.1, l: first_missing.2 }),
    }
}
