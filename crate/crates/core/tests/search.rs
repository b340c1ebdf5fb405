use std::collections::BTreeSet;

use collinear_core::geometry::{rat, Rat};
use collinear_core::search::*;
use collinear_core::triples::{Class, Edge, TripleSystem};
use proptest::prelude::*;

fn sys(n: usize, edges: &[(usize, usize, usize)]) -> TripleSystem {
    TripleSystem::from_edges([n; 3], edges.iter().map(|&(a, b, c)| Edge::new(a, b, c)))
}

/// Combinatorial k-system: A_i = {ik..ik+k}, C_j likewise, b_{i,j} = ik + j.
fn planted_k(k: usize) -> TripleSystem {
    let mut e = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                e.push((i * k + l, i * k + j, j * k + (k - 1 - l)));
            }
        }
    }
    sys(k * k, &e)
}

fn params(delta: Rat, m: usize, n: usize) -> SearchParams {
    SearchParams::from_delta(delta, n).unwrap().with_block_size(m)
}

/// Every 3-subset of edges with the (6,3) intersection pattern.
fn naive_663(t: &TripleSystem) -> BTreeSet<[Edge; 3]> {
    let e = t.edges();
    let mut out = BTreeSet::new();
    for x in 0..e.len() {
        for y in x + 1..e.len() {
            for z in y + 1..e.len() {
                if let Some(c) = Config63::from_edges([e[x], e[y], e[z]]) {
                    out.insert(c.sorted_edges());
                }
            }
        }
    }
    out
}

fn arb_system(max_n: usize, max_edges: usize) -> impl Strategy<Value = TripleSystem> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..n), 0..=max_edges)
            .prop_map(move |v| sys(n, &v))
    })
}

#[test]
fn partition_examples() {
    let t = TripleSystem::empty([10; 3]);
    let p = partition_blocks(&t, 5).unwrap();
    assert_eq!((p.a_blocks(), p.c_blocks()), (2, 2));
    let p = partition_blocks(&t, 3).unwrap();
    let sizes: Vec<usize> = (0..p.a_blocks()).map(|b| p.a_range(b).len()).collect();
    assert_eq!(sizes, [3, 3, 3, 1]);
    let p = partition_blocks(&TripleSystem::empty([25; 3]), 5).unwrap();
    assert_eq!(p.a_blocks(), 5);
    assert_eq!((0..5).flat_map(|b| p.a_range(b)).collect::<Vec<_>>(), (0..25).collect::<Vec<_>>());
    assert_eq!(partition_blocks(&t, 0), Err(ParamError::BlockSize));
}

#[test]
fn default_parameters() {
    // ⌊δM/8⌋ ≥ 3 at δ = 1 needs M = 24.
    let p = SearchParams::from_delta(rat(1, 1), 1000).unwrap();
    assert_eq!(p.block_size, 24);
    assert_eq!(p.skinny_bound, 1000);
    assert_eq!(p.epsilon, rat(1, 8));
    let p = SearchParams::from_delta(rat(1, 2), 10_000_000).unwrap();
    assert_eq!(p.block_size, 48);
    assert_eq!(p.skinny_bound, 32 * 48 * 48 * 48 * 2);
    assert!(SearchParams::from_delta(rat(0, 1), 5).is_err());
    assert!(SearchParams::from_delta(rat(3, 2), 5).is_err());
}

#[test]
fn classify_good_examples() {
    let t = sys(4, &[(0, 0, 0)]);
    let part = partition_blocks(&t, 4).unwrap();
    assert!(classify_good(&t, &part, &rat(1, 4)).good[0]);
    assert!(!classify_good(&t, &part, &rat(1, 2)).good[0]);

    let t = planted_k(3);
    let part = partition_blocks(&t, 3).unwrap();
    let g = classify_good(&t, &part, &rat(1, 1));
    assert!(g.good.iter().all(|&x| x));
    assert!(g.counts.values().all(|&c| c == 3));
}

#[test]
fn prune_examples() {
    // planted 3-system, M = 3, δ = 1: per-b block degree 3 ≥ 3/4, goodness
    // 3 ≥ 3/8, block pair 3 ≥ 9/8.
    let t = planted_k(3);
    let (p, r) = prune(&t, &params(rat(1, 1), 3, 9));
    assert_eq!(p, t);
    assert_eq!(r.total_removed(), 0);

    let t = sys(10, &[(0, 0, 0)]);
    let (p, r) = prune(&t, &params(rat(1, 1), 10, 10));
    assert!(p.is_empty());
    assert_eq!(r.first_round, [1, 0, 0]);
}

fn check_prune_post(t: &TripleSystem, ps: &SearchParams) {
    let (p, _) = prune(t, ps);
    let part = partition_blocks(&p, ps.block_size).unwrap();
    let g = classify_good(&p, &part, &(&ps.delta / Rat::from_integer(8.into())));
    assert!(g.good.iter().all(|&x| x));
    let m = ps.block_size;
    for e in p.edges() {
        let (i, j) = (part.a_block(e.a), part.c_block(e.c));
        let n = p.edges().iter().filter(|f| part.a_block(f.a) == i && part.c_block(f.c) == j).count();
        assert!(Rat::from_integer((8 * n).into()) >= &ps.delta * Rat::from_integer((m * m).into()));
    }
    let (q, r2) = prune(&p, ps);
    assert_eq!(q, p, "prune must be idempotent");
    assert_eq!(r2.total_removed(), 0);
    assert!(p.edges().iter().all(|e| t.contains(e)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn find_663_matches_naive(t in arb_system(8, 40)) {
        let fast: BTreeSet<[Edge; 3]> = find_663(&t, None).iter().map(|c| c.sorted_edges()).collect();
        prop_assert_eq!(fast.len(), find_663(&t, None).len());
        prop_assert_eq!(fast, naive_663(&t));
    }

    #[test]
    fn find_663_scoped_matches_naive(t in arb_system(8, 40), m in 1usize..5, i in 0usize..3, j in 0usize..3) {
        let part = partition_blocks(&t, m).unwrap();
        let scope = Scope::BlockPair { partition: part.clone(), a_block: i, c_block: j };
        let sub = t.restrict(|e| part.a_block(e.a) == i && part.c_block(e.c) == j);
        let fast: BTreeSet<[Edge; 3]> = find_663(&t, Some(&scope)).iter().map(|c| c.sorted_edges()).collect();
        prop_assert_eq!(fast, naive_663(&sub));
    }

    #[test]
    fn prune_postconditions(t in arb_system(12, 80), dn in 1i64..8, m in 1usize..7) {
        check_prune_post(&t, &params(rat(dn, 8), m, t.n()));
    }

    #[test]
    fn greedy_bound(pool in prop::collection::btree_map((0usize..20, 0usize..20), 1usize..10, 0..30), n in 1usize..20) {
        let pairs: Vec<((usize, usize), usize)> = pool
            .into_iter()
            .filter(|((x, y), _)| x < y && y - x <= n)
            .collect();
        let out = greedy_pair_select(&pairs, n);
        let mut seen = BTreeSet::new();
        for ((x, y), _) in &out {
            prop_assert!(seen.insert(*x) && seen.insert(*y));
        }
        let total: usize = pairs.iter().map(|p| p.1).sum();
        let kept: usize = out.iter().map(|p| p.1).sum();
        prop_assert!(kept * (4 * n + 1) >= total);
    }

    #[test]
    fn skinny_output_is_disjoint_skinny_and_reproducible(t in arb_system(12, 90), seed in any::<u64>(), ex in any::<bool>()) {
        let mut ps = params(rat(1, 8), 4, t.n());
        ps.exhaustive = ex;
        let r = find_skinny_663(&t, &ps, seed);
        let mut used = BTreeSet::new();
        for c in &r.configs {
            prop_assert!(is_skinny(c, ps.skinny_bound));
            prop_assert!(c.edges.iter().all(|e| t.contains(e)));
            for e in c.edges {
                prop_assert!(used.insert(e));
            }
        }
        prop_assert_eq!(r.configs, find_skinny_663(&t, &ps, seed).configs);
    }

    #[test]
    fn direct_ttt_is_verified(t in arb_system(6, 40)) {
        if let Some(x) = find_tictactoe_direct(&t) {
            prop_assert!(x.verify(&t));
        }
    }
}

#[test]
fn find_663_examples() {
    let t = sys(3, &[(1, 1, 1), (1, 2, 2), (2, 2, 1)]);
    let c = find_663(&t, None);
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].double(Class::B), 2);
    assert_eq!(c[0].pair(Class::B), (2, 1));

    // pairwise disjoint edges
    let t = sys(3, &[(0, 0, 0), (1, 1, 1), (2, 2, 2)]);
    assert!(find_663(&t, None).is_empty());

    let t = planted_k(3);
    let part = partition_blocks(&t, 3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let scope = Scope::BlockPair { partition: part.clone(), a_block: i, c_block: j };
            let sub = t.restrict(|e| part.a_block(e.a) == i && part.c_block(e.c) == j);
            assert_eq!(find_663(&t, Some(&scope)).len(), naive_663(&sub).len());
        }
    }
}

#[test]
fn skinny_examples() {
    let t = sys(3, &[(1, 1, 1), (1, 2, 2), (2, 2, 1)]);
    let c = find_663(&t, None)[0];
    assert!(is_skinny(&c, 1));
    let t = sys(5, &[(0, 1, 1), (0, 2, 2), (3, 2, 1)]);
    let c = find_663(&t, None)[0];
    assert_eq!(c.gap(Class::A), 3);
    assert!(!is_skinny(&c, 2));
    assert!(is_skinny(&c, 3));

    let empty = TripleSystem::empty([5; 3]);
    assert!(find_skinny_663(&empty, &params(rat(1, 2), 2, 5), 1).configs.is_empty());
}

#[test]
fn greedy_examples() {
    assert_eq!(greedy_pair_select(&[((1, 2), 4)], 3), vec![((1, 2), 4)]);
    assert_eq!(greedy_pair_select(&[((1, 2), 3), ((2, 3), 5)], 3), vec![((2, 3), 5)]);
    // tie: smaller pair first
    assert_eq!(greedy_pair_select(&[((2, 3), 5), ((1, 2), 5)], 3), vec![((1, 2), 5)]);
}

fn planted_ttt() -> TripleSystem {
    sys(3, &[(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 2), (1, 2, 0), (2, 0, 1)])
}

#[test]
fn tictactoe_examples() {
    let t = planted_ttt();
    let x = find_tictactoe_direct(&t).unwrap();
    assert!(x.verify(&t));
    assert_eq!(x.vertices(Class::A), [0, 1, 2]);
    let ps = SearchParams::for_system(&t);
    let r = find_tictactoe(&t, &ps, 0, TttStrategy::Auto).unwrap();
    assert_eq!(r.strategy, TttStrategy::Direct);

    let small = sys(3, &[(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 2), (1, 2, 0)]);
    assert!(find_tictactoe(&small, &ps, 0, TttStrategy::Direct).is_none());

    // removing one edge of the board kills it
    let t2 = t.restrict(|e| *e != Edge::new(2, 0, 1));
    assert!(find_tictactoe_direct(&t2).is_none());
}

#[test]
fn k_branch_examples() {
    let t = sys(6, &[(0, 0, 0), (1, 0, 1), (2, 0, 2)]);
    let part = partition_blocks(&t, 3).unwrap();
    assert_eq!(find_k_branches(&t, &part, 3).branches.len(), 1);
    assert_eq!(find_k_branches(&t, &part, 4).branches.len(), 0);

    let t = planted_k(3);
    let part = partition_blocks(&t, 3).unwrap();
    let kb = find_k_branches(&t, &part, 3);
    assert_eq!(kb.branches.len(), 9);
}

#[test]
fn branch_graph_examples() {
    let g = branch_bipartite_graph(&[], &[], &[]);
    assert_eq!(g.graph.edge_count(), 0);

    let t = sys(6, &[(0, 0, 0), (1, 0, 1), (2, 0, 2)]);
    let part = partition_blocks(&t, 3).unwrap();
    let kb = find_k_branches(&t, &part, 3);
    let (a, c) = branch_tuples(&kb.branches);
    assert_eq!(branch_bipartite_graph(&kb.branches, &a, &c).graph.edge_count(), 1);

    let t = planted_k(3);
    let part = partition_blocks(&t, 3).unwrap();
    let kb = find_k_branches(&t, &part, 3);
    let (a, c) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a, &c);
    assert_eq!((bg.graph.left, bg.graph.right, bg.graph.edge_count()), (3, 3, 9));
}

/// Brute force over all left s-subsets.
fn biclique_oracle(g: &BipartiteGraph, s: usize, t: usize) -> bool {
    (0u32..1 << g.left).filter(|m| m.count_ones() as usize == s).any(|m| {
        let common = (0..g.right).filter(|&r| (0..g.left).all(|l| m >> l & 1 == 0 || g.has_edge(l, r))).count();
        common >= t
    })
}

#[test]
fn biclique_examples() {
    let g = BipartiteGraph::new(3, 3, [(1, 2)]);
    assert_eq!(find_biclique(&g, 1, 1), Some(Biclique { left: vec![1], right: vec![2] }));

    let mut e: Vec<(usize, usize)> = vec![(0, 5), (3, 1), (6, 6)];
    e.extend([(2, 3), (2, 4), (5, 3), (5, 4)]);
    let g = BipartiteGraph::new(8, 8, e);
    let b = find_biclique(&g, 2, 2).unwrap();
    assert_eq!((b.left, b.right), (vec![2, 5], vec![3, 4]));

    for n in [4, 6, 8] {
        let g = BipartiteGraph::new(n, n, (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))));
        // the n/2 × n/2 biclique exists (left S, right = complement of S);
        // one more left vertex leaves too few common neighbours
        assert!(find_biclique(&g, n / 2, n / 2).is_some());
        assert!(biclique_oracle(&g, n / 2, n / 2));
        assert!(find_biclique(&g, n / 2 + 1, n / 2).is_none());
        assert!(!biclique_oracle(&g, n / 2 + 1, n / 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn biclique_matches_oracle(n in 1usize..8, m in 1usize..8, bits in any::<u64>(), s in 1usize..4, t in 1usize..4) {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|l| (0..m).map(move |r| (l, r))).filter(|&(l, r)| bits >> (l * 8 + r) & 1 == 1).collect();
        let g = BipartiteGraph::new(n, m, edges);
        let found = find_biclique(&g, s, t);
        prop_assert_eq!(found.is_some(), biclique_oracle(&g, s, t));
        if let Some(b) = found {
            prop_assert_eq!((b.left.len(), b.right.len()), (s, t));
            for &l in &b.left {
                for &r in &b.right {
                    prop_assert!(g.has_edge(l, r));
                }
            }
        }
    }
}

#[test]
fn assemble_examples() {
    let t = planted_k(3);
    let part = partition_blocks(&t, 3).unwrap();
    let kb = find_k_branches(&t, &part, 3);
    let (a, c) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a, &c);
    let bic = find_biclique(&bg.graph, 3, 3).unwrap();
    let ks = assemble_k_system(&bic, &bg, &kb.branches, &t).unwrap();
    assert_eq!(ks.edges().len(), 27);
    assert!(ks.verify(&t).is_ok());
    assert!(ks.distinct_points() <= 27);
    assert_eq!(ks.orientation, BlockOrientation::Ascending);

    // k = 1: any single edge
    let t1 = sys(4, &[(2, 3, 1)]);
    let part = partition_blocks(&t1, 1).unwrap();
    let kb = find_k_branches(&t1, &part, 1);
    let (a, c) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a, &c);
    let bic = find_biclique(&bg.graph, 1, 1).unwrap();
    let ks = assemble_k_system(&bic, &bg, &kb.branches, &t1).unwrap();
    assert_eq!(ks.edges(), vec![Edge::new(2, 3, 1)]);

    // Same-direction pairing instead of the reversal: a_ℓ with c_ℓ.
    let mut e = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                e.push((i * 2 + l, i * 2 + j, j * 2 + l));
            }
        }
    }
    let tb = sys(4, &e);
    let part = partition_blocks(&tb, 2).unwrap();
    let kb = find_k_branches(&tb, &part, 2);
    let (a, c) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a, &c);
    let bic = find_biclique(&bg.graph, 2, 2).unwrap();
    let ks = assemble_k_system(&bic, &bg, &kb.branches, &tb).unwrap();
    assert_eq!(ks.orientation, BlockOrientation::Descending);

    // Mixed orientation across blocks cannot be repaired.
    let mut e2 = e.clone();
    e2.retain(|&(a, b, _)| !(a / 2 == 1 && b == 3));
    e2.extend([(2, 3, 3), (3, 3, 2)]);
    let tm = sys(4, &e2);
    let kb = find_k_branches(&tm, &part, 2);
    let (a, c) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a, &c);
    let bic = find_biclique(&bg.graph, 2, 2).unwrap();
    match assemble_k_system(&bic, &bg, &kb.branches, &tm) {
        Err(KSystemError::MissingEdge { i, j, l }) => assert!(i < 2 && j < 2 && l < 2),
        other => panic!("expected a missing edge, got {other:?}"),
    }
}
