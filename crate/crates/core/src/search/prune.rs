use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::geometry::Rat;
use crate::triples::{Class, Edge, TripleSystem};

use super::params::{partition_blocks, BlockPartition, SearchParams};

/// Per-edge goodness and the per-`(b, i, j)` counts behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goodness {
    /// Indexed by edge id.
    pub good: Vec<bool>,
    pub counts: BTreeMap<(usize, usize, usize), usize>,
}

fn at_least(count: usize, threshold: &Rat) -> bool {
    Rat::from_integer(count.into()) >= *threshold
}

/// An edge `(a, b, c)` with `a ∈ P_i`, `c ∈ Q_j` is good iff `b` lies on at
/// least `εM` edges between `P_i` and `Q_j`.
pub fn classify_good(t: &TripleSystem, part: &BlockPartition, epsilon: &Rat) -> Goodness {
    let mut counts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for e in t.edges() {
        *counts.entry((e.b, part.a_block(e.a), part.c_block(e.c))).or_default() += 1;
    }
    let threshold = epsilon * Rat::from_integer(part.size.into());
    let good = t
        .edges()
        .iter()
        .map(|e| at_least(counts[&(e.b, part.a_block(e.a), part.c_block(e.c))], &threshold))
        .collect();
    Goodness { good, counts }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneReport {
    pub initial: usize,
    pub remaining: usize,
    /// Removed edges per stage, summed over all rounds.
    pub removed: [usize; 3],
    /// Removed edges per stage in the first round alone.
    pub first_round: [usize; 3],
    /// Edges through each `b` after the first stage-1 pass.
    pub gamma: BTreeMap<usize, usize>,
    pub rounds: usize,
}

impl PruneReport {
    pub fn total_removed(&self) -> usize {
        self.removed.iter().sum()
    }
}

/// Stage 1 for one `b`: alternately drop A-blocks, then C-blocks, carrying
/// fewer than `δM/4` of `b`'s edges, until nothing changes.
fn stage1_one(edges: &mut Vec<Edge>, part: &BlockPartition, threshold: &Rat) -> usize {
    let before = edges.len();
    loop {
        let mut changed = false;
        for side in [Class::A, Class::C] {
            let block = |e: &Edge| match side {
                Class::A => part.a_block(e.a),
                _ => part.c_block(e.c),
            };
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for e in edges.iter() {
                *counts.entry(block(e)).or_default() += 1;
            }
            let len = edges.len();
            edges.retain(|e| at_least(counts[&block(e)], threshold));
            changed |= edges.len() != len;
        }
        if !changed {
            return before - edges.len();
        }
    }
}

fn by_b(t: &TripleSystem) -> BTreeMap<usize, Vec<Edge>> {
    let mut m: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for e in t.edges() {
        m.entry(e.b).or_default().push(*e);
    }
    m
}

/// Three-stage pruning (per-`b` block thresholds, weak triples, sparse block
/// pairs), repeated until a full round removes nothing, so the result is a
/// fixpoint.
pub fn prune(t: &TripleSystem, params: &SearchParams) -> (TripleSystem, PruneReport) {
    let part = partition_blocks(t, params.block_size).expect("validated block size");
    let m = params.block_size;
    let th1 = params.delta_times(m, 4);
    let th3 = params.delta_times(m * m, 8);
    let mut report = PruneReport { initial: t.len(), ..PruneReport::default() };
    let mut current = t.clone();
    loop {
        let mut removed = [0usize; 3];

        let mut kept = Vec::with_capacity(current.len());
        for (b, mut edges) in by_b(&current) {
            removed[0] += stage1_one(&mut edges, &part, &th1);
            if report.rounds == 0 {
                report.gamma.insert(b, edges.len());
            }
            kept.extend(edges);
        }
        current = TripleSystem::from_edges(current.sizes(), kept);

        // weak triples: b is not δ/8-good for the block pair
        let g = classify_good(&current, &part, &(&params.delta / Rat::from_integer(8.into())));
        let before = current.len();
        let mut id = 0;
        current = current.restrict(|_| {
            id += 1;
            g.good[id - 1]
        });
        removed[1] = before - current.len();

        let mut pair_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in current.edges() {
            *pair_counts.entry((part.a_block(e.a), part.c_block(e.c))).or_default() += 1;
        }
        let before = current.len();
        current = current.restrict(|e| at_least(pair_counts[&(part.a_block(e.a), part.c_block(e.c))], &th3));
        removed[2] = before - current.len();

        if report.rounds == 0 {
            report.first_round = removed;
        }
        for s in 0..3 {
            report.removed[s] += removed[s];
        }
        report.rounds += 1;
        if removed == [0, 0, 0] {
            break;
        }
    }
    report.remaining = current.len();
    (current, report)
}
