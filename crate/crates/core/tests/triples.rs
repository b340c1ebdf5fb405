use collinear_core::generators::{default_offsets, gen_ksystem, gen_mutually_avoiding};
use collinear_core::geometry::{int, ProjMap};
use collinear_core::triples::*;
use collinear_core::HPoint;
use proptest::prelude::*;

fn pts(v: &[(i64, i64)]) -> Vec<HPoint> {
    v.iter().map(|&(x, y)| HPoint::int(x, y)).collect()
}

fn sets(a: &[(i64, i64)], b: &[(i64, i64)], c: &[(i64, i64)]) -> LabeledSets {
    LabeledSets::new(pts(a), pts(b), pts(c), false).unwrap()
}

fn ksystem3() -> (LabeledSets, TripleSystem) {
    let d = int(1);
    let s = default_offsets(3, &d);
    let g = gen_ksystem(3, &d, &s, &s).unwrap();
    (g.sets, g.triples)
}

#[test]
fn build_triples_examples() {
    let t = build_triples(&sets(&[(0, 2)], &[(1, 1)], &[(2, 0)]));
    assert_eq!(t.edges(), &[Edge::new(0, 0, 0)]);
    assert!(build_triples(&sets(&[(0, 2)], &[(1, 1)], &[(3, 0)])).is_empty());
    let (_, t) = ksystem3();
    assert_eq!(t.len(), 27);
}

#[test]
fn sets_validation() {
    assert!(matches!(
        LabeledSets::new(pts(&[(0, 0), (0, 0)]), vec![], vec![], false),
        Err(SetsError::DuplicatePoint { class: Class::A, first: 0, index: 1 })
    ));
    let dir = HPoint::direction(&int(1), &int(1)).unwrap();
    assert!(LabeledSets::new(vec![], vec![], vec![dir.clone()], false).is_err());
    assert!(LabeledSets::new(vec![], vec![], vec![dir], true).is_ok());
    assert!(LabeledSets::new(vec![], vec![], pts(&[(1, 1)]), true).is_err());
}

#[test]
fn selection_examples() {
    let (s, t) = ksystem3();
    assert_eq!(build_triples_from_selection(&s, t.edges()).unwrap(), t);
    assert!(build_triples_from_selection(&s, &[]).unwrap().is_empty());
    let half: Vec<Edge> = t.edges().iter().step_by(2).copied().collect();
    assert_eq!(build_triples_from_selection(&s, &half).unwrap().edges(), &half[..]);
    let bad = (0..3).flat_map(|i| (0..3).map(move |k| Edge::new(i, 0, k))).find(|e| !t.contains(e)).unwrap();
    assert_eq!(build_triples_from_selection(&s, &[bad]), Err(TripleError::NotCollinear(bad)));
}

#[test]
fn avoidance_examples() {
    let s = sets(&[(0, 0), (1, 0)], &[(2, 0)], &[(0, 5)]);
    assert!(!mutually_avoiding(&s).holds);
    let s = sets(&[(0, 0)], &[(100, 0)], &[(0, 100)]);
    assert!(mutually_avoiding(&s).holds);
    let (s, _) = ksystem3();
    assert!(avoiding_one_sided(&s).holds);
    // a B point on a line of A
    let s = sets(&[(0, 2), (1, 2)], &[(5, 2), (6, 1)], &[(0, 0), (1, 0)]);
    let r = avoiding_one_sided(&s);
    assert!(!r.holds);
    assert_eq!(r.violation.unwrap().line_set, Class::A);
    // directions at infinity impose nothing on hulls of A and B
    let dirs = vec![HPoint::direction(&int(1), &int(0)).unwrap(), HPoint::direction(&int(1), &int(1)).unwrap()];
    let s = LabeledSets::new(pts(&[(0, 2), (1, 3)]), pts(&[(10, 0)]), dirs, true).unwrap();
    assert!(avoiding_one_sided(&s).holds);
}

#[test]
fn verify_order_examples() {
    assert!(verify_order(&TripleSystem::empty([0, 0, 0])).is_ok());
    let t = TripleSystem::from_edges([3, 3, 3], [Edge::new(1, 1, 2), Edge::new(1, 2, 1)]);
    assert_eq!(verify_order(&t).unwrap_err().rule, 1);
}

#[test]
fn canonical_order_examples() {
    let s = sets(&[(0, 2)], &[(1, 1)], &[(2, 0)]);
    let t = build_triples(&s);
    assert!(canonical_order(&s, &t).is_ok());
    let (s, t) = ksystem3();
    let o = canonical_order(&s, &t).unwrap();
    assert!(verify_order(&o.triples).is_ok());
    assert_eq!(o.triples.len(), 27);
    for seed in 0..5 {
        let s = gen_mutually_avoiding(12, seed).unwrap();
        let t = build_triples(&s);
        let o = canonical_order(&s, &t).unwrap();
        assert!(verify_order(&o.triples).is_ok());
        assert_eq!(build_triples(&o.sets), o.triples);
    }
}

fn arb_sets() -> impl Strategy<Value = LabeledSets> {
    let coord = || (-4i64..5, -4i64..5);
    let set = move || proptest::collection::btree_set(coord(), 1..8);
    (set(), set(), set()).prop_map(|(a, b, c)| {
        let v = |s: std::collections::BTreeSet<(i64, i64)>| s.into_iter().collect::<Vec<_>>();
        sets(&v(a), &v(b), &v(c))
    })
}

proptest! {
    #[test]
    fn build_matches_brute(s in arb_sets()) {
        prop_assert_eq!(build_triples(&s), build_triples_brute(&s));
    }

    #[test]
    fn edge_count_projectively_invariant(s in arb_sets(), m in proptest::array::uniform9(-3i64..4)) {
        let rows = [[int(m[0]), int(m[1]), int(m[2])], [int(m[3]), int(m[4]), int(m[5])], [int(m[6]), int(m[7]), int(m[8])]];
        let Ok(map) = ProjMap::from_rows(&rows) else { return Ok(()) };
        let img = |v: &[HPoint]| v.iter().map(|p| map.apply(p)).collect::<Vec<_>>();
        let (a, b, c) = (img(&s.a), img(&s.b), img(&s.c));
        prop_assume!(a.iter().chain(&b).chain(&c).all(HPoint::is_finite));
        let moved = LabeledSets::new(a, b, c, false).unwrap();
        prop_assert_eq!(build_triples(&moved).len(), build_triples(&s).len());
    }

    #[test]
    fn canonical_order_verifies_when_avoiding(seed in 0u64..1000, n in 1usize..10) {
        let s = gen_mutually_avoiding(n, seed).unwrap();
        let t = build_triples(&s);
        prop_assert!(t.is_linear());
        let o = canonical_order(&s, &t).unwrap();
        prop_assert!(verify_order(&o.triples).is_ok());
        for (class, perm) in Class::ALL.iter().zip(&o.certificate.perm) {
            let moved: Vec<&HPoint> = perm.iter().map(|&old| s.point(*class, old)).collect();
            let now: Vec<&HPoint> = o.sets.set(*class).iter().collect();
            prop_assert_eq!(moved, now);
        }
    }
}

