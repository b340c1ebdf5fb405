//! Acceptance run: one PASS/FAIL line per criterion. Every tolerance and
//! time limit is a constant below. Each criterion also renders a report of
//! its results; criterion 10 reruns 1-9 and compares those bytes.
//!
//! Exits nonzero when a criterion fails that is not in `KNOWN_DEVIATIONS`.
//! Set `ACCEPTANCE_REPORTS=1` to print the per-criterion reports.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use collinear::report::{strip_timestamp, Report};
use collinear_core::conic::{
    axis_quotient, curve_determinant, extract_conic, ConicError, CurvePoly, ExtractOptions, Mode,
};
use collinear_core::generators::{
    default_conic_triple, default_degenerate_positions, degenerate_family_triple, gen_conic_instance, gen_degenerate_family,
    gen_grid_with_directions, gen_ksystem, default_offsets, gen_mutually_avoiding, gen_ngon, gen_parallel_lines, gen_pascal_ttt,
};
use collinear_core::geometry::approx::{count_directions_approx, regular_ngon};
use collinear_core::geometry::{collinear, conic_through_five, int, similar_rel_line, HLine};
use collinear_core::search::{
    assemble_k_system, branch_bipartite_graph, branch_tuples, classify_good, find_663, find_biclique, find_k_branches,
    find_tictactoe, partition_blocks, prune, SearchParams, TttStrategy,
};
use collinear_core::triples::{build_triples, canonical_order, verify_order, Class, Edge, TripleSystem};
use collinear_core::{HPoint, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail; see the notes printed with criterion 4.
const KNOWN_DEVIATIONS: &[usize] = &[4];

const C1_INSTANCES: u64 = 200;
const C1_LIMIT: Duration = Duration::from_secs(10);
const C2_LIMIT: Duration = Duration::from_secs(1);
const C3_INSTANCES: u64 = 100;
const C3_MAX_NB: usize = 200;
const C3_LIMIT: Duration = Duration::from_secs(60);
const C4_TRIPLES: usize = 100;
const C4_SEED: u64 = 4;
const C5_INSTANCES: u64 = 50;
const C5_MAX_N: usize = 40;
const C6_LIMIT: Duration = Duration::from_secs(30);
const C7_SYSTEMS: u64 = 100;
const C7_MAX_N: usize = 12;
const C8_INSTANCES: u64 = 20;
const C8_N: usize = 24;
const C8_BLOCK: usize = 6;
const C8_STRICT_BLOCK: usize = 12;
const C9_TOLERANCE: f64 = 1e-9;
const C9_GRID: usize = 5;

struct Outcome {
    pass: bool,
    detail: String,
    report: String,
}

fn outcome(pass: bool, detail: String, r: &Report) -> Outcome {
    Outcome { pass, detail, report: strip_timestamp(&r.render()) }
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String, Report)) -> Outcome {
    let start = Instant::now();
    let (pass, detail, r) = f();
    let took = start.elapsed();
    let in_time = took < limit;
    let detail = format!("{detail}; {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs());
    outcome(pass && in_time, detail, &r)
}

fn c1_pascal() -> Outcome {
    timed(C1_LIMIT, || {
        let mut r = Report::new("acceptance-1");
        let mut ok = 0;
        for seed in 0..C1_INSTANCES {
            let g = gen_pascal_ttt(seed).expect("pascal instance");
            let params = SearchParams::for_system(&g.triples);
            let Some(res) = find_tictactoe(&g.triples, &params, seed, TttStrategy::Auto) else {
                r.stat("missing", seed);
                continue;
            };
            let a: Vec<HPoint> = res.ttt.vertices(Class::A).iter().map(|&i| g.sets.a[i].clone()).collect();
            let b: Vec<HPoint> = res.ttt.vertices(Class::B).iter().map(|&i| g.sets.b[i].clone()).collect();
            let six: Vec<HPoint> = a.into_iter().chain(b).collect();
            // planted conic, and independently the conic through five of them
            let fit = conic_through_five(&[six[0].clone(), six[1].clone(), six[2].clone(), six[3].clone(), six[4].clone()]);
            let on_fit = fit.as_ref().is_ok_and(|f| f.conic.contains(&six[5]));
            let on_planted = six.len() == 6 && six.iter().all(|p| g.conic.contains(p));
            let good = res.ttt.verify(&g.triples) && on_planted && on_fit;
            ok += usize::from(good);
            r.stat("instance", format!("{seed} {} {}", res.ttt.rows.map(|e| e.to_string()).join(";"), good));
        }
        let pass = ok as u64 == C1_INSTANCES;
        (pass, format!("{ok}/{C1_INSTANCES} tic-tac-toes found with six points on the conic"), r)
    })
}

fn c2_degenerate() -> Outcome {
    timed(C2_LIMIT, || {
        let mut r = Report::new("acceptance-2");
        let t = degenerate_family_triple();
        let zero = curve_determinant(&t, Mode::T1).is_ok_and(|p| p.is_zero());
        let meets: Vec<HPoint> = similar_rel_line(&Mode::T1.base(), &t, &HLine::x_axis())
            .ok()
            .flatten()
            .map(|w| w.meets.into_iter().filter(HPoint::is_finite).collect())
            .unwrap_or_default();
        let meets_ok = meets == [HPoint::int(0, 0), HPoint::int(2, 0)];
        let g = gen_degenerate_family(&default_degenerate_positions()).expect("degenerate family");
        let err = extract_conic(&g.sets, &g.triples, &ExtractOptions::default());
        let degenerate = matches!(err, Err(ConicError::Degenerate(_)));
        r.stat("zero-determinant", zero);
        r.stat("finite-meets", meets.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "));
        r.stat("extract-degenerate", degenerate);
        (
            zero && meets_ok && degenerate,
            format!("determinant zero: {zero}, finite meets (0,0),(2,0): {meets_ok}, extraction refused: {degenerate}"),
            r,
        )
    })
}

fn c3_conic_round_trip() -> Outcome {
    timed(C3_LIMIT, || {
        let mut r = Report::new("acceptance-3");
        let mut ok = 0;
        let mut largest = 0;
        for seed in 0..C3_INSTANCES {
            // sizes sweep 1..=200
            let n_b = 1 + (seed as usize * 2 + (seed as usize % 2)) % C3_MAX_NB;
            let n_b = if seed == C3_INSTANCES - 1 { C3_MAX_NB } else { n_b };
            largest = largest.max(n_b);
            let g = gen_conic_instance(&default_conic_triple(), n_b, seed).expect("conic instance");
            let good = match extract_conic(&g.sets, &g.triples, &ExtractOptions { seed, ..Default::default() }) {
                Ok(x) => x.conic == g.conic && g.planted_b.iter().all(|b| x.on_conic.binary_search(b).is_ok()),
                Err(_) => false,
            };
            ok += usize::from(good);
            r.stat("instance", format!("{seed} n_b={n_b} {good}"));
        }
        let pass = ok as u64 == C3_INSTANCES;
        (pass, format!("{ok}/{C3_INSTANCES} conics recovered with all planted B points (n_B up to {largest})"), r)
    })
}

fn rand_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> Rat {
    loop {
        let v = Rat::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into());
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

fn poly_in_y(terms: &[Rat]) -> CurvePoly {
    let mut p = CurvePoly::zero();
    for (j, c) in terms.iter().enumerate() {
        p = &p + &CurvePoly::monomial(0, j, c.clone());
    }
    p
}

fn x_coeff(q: &CurvePoly, i: usize) -> CurvePoly {
    poly_in_y(&q.x_coefficient(i))
}

fn c4_coefficients() -> Outcome {
    let mut r = Report::new("acceptance-4");
    let mut rng = ChaCha8Rng::seed_from_u64(C4_SEED);
    let (mut literal_t1, mut literal_t2, mut corrected, mut done) = (0, 0, 0, 0);
    let y = CurvePoly::y();
    let one = CurvePoly::constant(Rat::one());
    while done < C4_TRIPLES {
        let pts: [(Rat, Rat); 3] = std::array::from_fn(|_| (rand_rat(&mut rng, false), rand_rat(&mut rng, true)));
        let t = pts.clone().map(|(x, yv)| HPoint::new(x, yv));
        let (Ok(p1), Ok(p2)) = (curve_determinant(&t, Mode::T1), curve_determinant(&t, Mode::T2)) else { continue };
        if p1.is_zero() || p2.is_zero() {
            continue;
        }
        done += 1;
        let (q1, q2) = (axis_quotient(&p1).unwrap(), axis_quotient(&p2).unwrap());
        let [(a1, b1), (a2, b2), (_, b3)] = &pts;
        let cross = a1 * b2 - a2 * b1;
        // literal forms
        let t1_x2 = CurvePoly::constant(b2 * (b3 - b2));
        let t2_c = &(&(&y - &one) * &(&(&y * &int(2)) - &one)) * &(&(a2 * b1 - a1 * b2) * b3);
        literal_t1 += usize::from(x_coeff(&q1, 2) == t1_x2);
        literal_t2 += usize::from(x_coeff(&q2, 0) == t2_c);
        // forms obtained by expanding the determinant
        let t1_x2_exp = CurvePoly::constant(b2 * (b3 - b1));
        let t1_c_exp = &(&(&y - &one) * &(&y - &CurvePoly::constant(int(2)))) * &(&cross * b3);
        let t2_x2_exp = CurvePoly::constant(b1 * (b3 - b2));
        let t2_c_exp = &(&(&y - &one) * &(&(&y * &int(2)) - &one)) * &(&cross * b3);
        corrected += usize::from(
            x_coeff(&q1, 2) == t1_x2_exp && x_coeff(&q1, 0) == t1_c_exp && x_coeff(&q2, 2) == t2_x2_exp && x_coeff(&q2, 0) == t2_c_exp,
        );
        r.stat("triple", format!("{} {} {}", q1, q2, cross));
    }
    r.stat("literal-t1-x2", literal_t1);
    r.stat("literal-t2-constant", literal_t2);
    r.stat("expanded", corrected);
    let pass = literal_t1 == C4_TRIPLES && literal_t2 == C4_TRIPLES;
    let detail = format!(
        "printed forms: T1 x^2 = b2(b3-b2) holds {literal_t1}/{C4_TRIPLES}, T2 constant = (y-1)(2y-1)(a2b1-a1b2)b3 holds \
         {literal_t2}/{C4_TRIPLES}; expanded forms T1 x^2 = b2(b3-b1), T1 constant = (y-1)(y-2)(a1b2-a2b1)b3, \
         T2 x^2 = b1(b3-b2), T2 constant = (y-1)(2y-1)(a1b2-a2b1)b3 hold {corrected}/{C4_TRIPLES}"
    );
    outcome(pass, detail, &r)
}

fn c5_ordering() -> Outcome {
    let mut r = Report::new("acceptance-5");
    let mut ok = 0;
    for seed in 0..C5_INSTANCES {
        let n = 5 + (seed as usize * 7) % (C5_MAX_N - 4);
        let sets = gen_mutually_avoiding(n, seed).expect("avoiding instance");
        let t = build_triples(&sets);
        let good = match canonical_order(&sets, &t) {
            // rebuild from the reordered points rather than trusting the relabelled system
            Ok(o) => verify_order(&build_triples(&o.sets)).is_ok() && verify_order(&o.triples).is_ok(),
            Err(_) => false,
        };
        ok += usize::from(good);
        r.stat("instance", format!("{seed} n={n} triples={} {good}", t.len()));
    }
    let pass = ok as u64 == C5_INSTANCES;
    outcome(pass, format!("{ok}/{C5_INSTANCES} orderings verified"), &r)
}

fn c6_ksystem() -> Outcome {
    timed(C6_LIMIT, || {
        let mut r = Report::new("acceptance-6");
        let mut ok = 0;
        let d = Rat::one();
        for k in 1..=4usize {
            let s = default_offsets(k, &d);
            let g = gen_ksystem(k, &d, &s, &s).expect("k-system instance");
            let t = build_triples(&g.sets);
            let part = partition_blocks(&t, k).unwrap();
            let kb = find_k_branches(&t, &part, k);
            let (at, ct) = branch_tuples(&kb.branches);
            let bg = branch_bipartite_graph(&kb.branches, &at, &ct);
            let sys = find_biclique(&bg.graph, k, k).and_then(|b| assemble_k_system(&b, &bg, &kb.branches, &t).ok());
            let good = sys.as_ref().is_some_and(|s| {
                let edges: BTreeSet<Edge> = s.edges().into_iter().collect();
                s.verify(&t).is_ok() && edges.len() == k * k * k && edges.iter().all(|e| g.sets.is_collinear(e))
            });
            ok += usize::from(good);
            r.stat("k", format!("{k} {good} {:?}", sys.map(|s| s.centers)));
        }
        (ok == 4, format!("{ok}/4 k-systems (k = 1..4) recovered with k^3 edges"), r)
    })
}

fn random_linear(seed: u64) -> TripleSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=C7_MAX_N);
    let tries = rng.gen_range(0..4 * n * n);
    let mut edges: Vec<Edge> = Vec::new();
    for _ in 0..tries {
        let e = Edge::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if edges.iter().all(|f| e.shared(f) <= 1) {
            edges.push(e);
        }
    }
    TripleSystem::from_edges([n; 3], edges)
}

/// Six nested loops over (a*, a, b*, b, c*, c): the double vertices a*, b*,
/// c* and singles a, b, c with edges (a*, b*, c), (a*, b, c*), (a, b*, c*).
fn naive_six_loop(t: &TripleSystem) -> BTreeSet<[Edge; 3]> {
    let [na, nb, nc] = t.sizes();
    let mut out = BTreeSet::new();
    for ad in 0..na {
        for bd in 0..nb {
            for cs in 0..nc {
                let e1 = Edge::new(ad, bd, cs);
                if !t.contains(&e1) {
                    continue;
                }
                for bs in 0..nb {
                    for cd in 0..nc {
                        let e2 = Edge::new(ad, bs, cd);
                        if bs == bd || cd == cs || !t.contains(&e2) {
                            continue;
                        }
                        for a_s in 0..na {
                            let e3 = Edge::new(a_s, bd, cd);
                            if a_s != ad && t.contains(&e3) {
                                let mut v = [e1, e2, e3];
                                v.sort();
                                out.insert(v);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn c7_six_three() -> Outcome {
    let mut r = Report::new("acceptance-7");
    let mut ok = 0;
    let mut total = 0;
    for seed in 0..C7_SYSTEMS {
        let t = random_linear(seed);
        assert!(t.is_linear());
        let fast: BTreeSet<[Edge; 3]> = find_663(&t, None).iter().map(|c| c.sorted_edges()).collect();
        let naive = naive_six_loop(&t);
        let good = fast == naive && find_663(&t, None).len() == naive.len();
        total += naive.len();
        ok += usize::from(good);
        r.stat("system", format!("{seed} edges={} configs={} {good}", t.len(), naive.len()));
    }
    let pass = ok as u64 == C7_SYSTEMS;
    outcome(pass, format!("{ok}/{C7_SYSTEMS} systems agree with the six-loop enumeration ({total} configurations)"), &r)
}

/// One prune run checked against its contract.
fn check_prune(t: &TripleSystem, params: &SearchParams, r: &mut Report, label: &str) -> bool {
    let eight = Rat::from_integer(8.into());
    let (p, rep) = prune(t, params);
    let (again, rep2) = prune(&p, params);
    let idempotent = again == p && rep2.total_removed() == 0;
    let part = partition_blocks(&p, params.block_size).unwrap();
    let eps = &params.delta / &eight;
    let all_good = classify_good(&p, &part, &eps).good.iter().all(|&g| g);
    let m = params.block_size;
    let mut per_pair: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for e in p.edges() {
        *per_pair.entry((part.a_block(e.a), part.c_block(e.c))).or_default() += 1;
    }
    let floor = &eps * Rat::from_integer((m * m).into());
    let dense_pairs = per_pair.values().all(|&c| Rat::from_integer(c.into()) >= floor);
    let n = t.n();
    let removed12 = rep.first_round[0] + rep.first_round[1];
    let bound = &params.delta * Rat::new(3.into(), 4.into()) * Rat::from_integer((n * n).into())
        + &eps * Rat::from_integer((m * n).into());
    let within = Rat::from_integer(removed12.into()) <= bound;
    let good = idempotent && all_good && dense_pairs && within;
    r.stat(
        "instance",
        format!(
            "{label} n={n} triples={} delta={} M={m} removed12={removed12} bound={bound} remaining={} rounds={} {good}",
            t.len(),
            params.delta,
            rep.remaining,
            rep.rounds
        ),
    );
    good
}

fn c8_pruning() -> Outcome {
    let mut r = Report::new("acceptance-8");
    let mut ok = 0;
    let mut removed = 0;
    for seed in 0..C8_INSTANCES {
        let sets = gen_parallel_lines(C8_N, seed).expect("dense instance");
        let t = build_triples(&sets);
        // default M (one block at this size), then several blocks
        let default = SearchParams::for_system(&t);
        let blocked = default.clone().with_block_size(C8_BLOCK);
        // overstated density: thresholds high enough that every stage fires
        let strict = SearchParams::from_delta(Rat::one(), t.n()).unwrap().with_block_size(C8_STRICT_BLOCK);
        let good = check_prune(&t, &default, &mut r, &format!("{seed} default"))
            & check_prune(&t, &blocked, &mut r, &format!("{seed} blocked"))
            & check_prune(&t, &strict, &mut r, &format!("{seed} strict"));
        removed += prune(&t, &strict).1.total_removed();
        ok += usize::from(good);
    }
    let pass = ok as u64 == C8_INSTANCES;
    outcome(
        pass,
        format!(
            "{ok}/{C8_INSTANCES} instances (density delta with M default and M = {C8_BLOCK}; delta = 1 with M = \
             {C8_STRICT_BLOCK}): idempotent, all (delta/8)-good, dense block pairs, stage 1+2 removals within bound; \
             {removed} triples pruned at delta = 1"
        ),
        &r,
    )
}

fn c9_directions() -> Outcome {
    let mut r = Report::new("acceptance-9");
    let mut ngon_ok = 0;
    for n in 5..=20usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let c1 = count_directions_approx(&regular_ngon(n), &pairs, C9_TOLERANCE);
        let c2 = count_directions_approx(&gen_ngon(n).unwrap(), &pairs, C9_TOLERANCE);
        ngon_ok += usize::from(c1 == n && c2 == n);
        r.stat("ngon", format!("{n} {c1} {c2}"));
    }
    let sets = gen_grid_with_directions(C9_GRID).unwrap();
    let fast = build_triples(&sets);
    let mut brute = Vec::new();
    for (i, a) in sets.a.iter().enumerate() {
        for (j, b) in sets.b.iter().enumerate() {
            for (k, c) in sets.c.iter().enumerate() {
                if collinear(a, b, c) {
                    brute.push(Edge::new(i, j, k));
                }
            }
        }
    }
    let grid_ok = fast.edges() == brute.as_slice();
    r.stat("grid-triples", format!("{} {}", fast.len(), brute.len()));
    let pass = ngon_ok == 16 && grid_ok;
    outcome(
        pass,
        format!("{ngon_ok}/16 polygons give n directions (tol {C9_TOLERANCE:e}); {C9_GRID}x{C9_GRID} grid: {} triples, brute force {}", fast.len(), brute.len()),
        &r,
    )
}

type Criterion = fn() -> Outcome;

const CRITERIA: [(usize, &str, Criterion); 9] = [
    (1, "Pascal tic-tac-toe on a conic", c1_pascal),
    (2, "degenerate family", c2_degenerate),
    (3, "conic round trip", c3_conic_round_trip),
    (4, "quotient coefficient identities", c4_coefficients),
    (5, "ordering correctness", c5_ordering),
    (6, "k-system round trip", c6_ksystem),
    (7, "(6,3) oracle equivalence", c7_six_three),
    (8, "pruning contract", c8_pruning),
    (9, "direction counts and grid triples", c9_directions),
];

/// The same CLI run twice must give identical reports apart from the timestamp.
fn cli_reports_identical() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let p = |name: &str| d.join(name).to_str().unwrap().to_string();
    let mut texts = Vec::new();
    for round in 0..2 {
        let inst = p(&format!("inst{round}"));
        let rep = p(&format!("r{round}.txt"));
        collinear::run(["collinear", "generate", "--kind", "conic-instance", "--n", "15", "--seed", "3", "--out", &inst, "--report", &p("g.txt")]);
        collinear::run(["collinear", "extract-conic", "--input", &inst, "--seed", "3", "--report", &rep]);
        let text = std::fs::read_to_string(&rep).unwrap().replace(&inst, "INST");
        texts.push(strip_timestamp(&text));
    }
    texts[0] == texts[1]
}

fn main() {
    let mut failed_unexpected = Vec::new();
    let mut first_reports = Vec::new();
    for (id, name, f) in CRITERIA {
        let o = f();
        let tag = if o.pass { "PASS" } else if KNOWN_DEVIATIONS.contains(&id) { "FAIL (known deviation)" } else { "FAIL" };
        println!("criterion {id:>2} {tag}: {name}: {}", o.detail);
        if !o.pass && !KNOWN_DEVIATIONS.contains(&id) {
            failed_unexpected.push(id);
        }
        if std::env::var_os("ACCEPTANCE_REPORTS").is_some() {
            print!("{}", o.report);
        }
        first_reports.push(o.report);
    }
    if KNOWN_DEVIATIONS.contains(&4) {
        println!("             note: the printed T1 x^2 factor and the printed T2 sign disagree with the exact expansion of the determinant; the expanded identities are checked above");
    }

    let start = Instant::now();
    let same: Vec<usize> = CRITERIA
        .iter()
        .zip(&first_reports)
        .filter(|((_, _, f), first)| f().report == **first)
        .map(|((id, _, _), _)| *id)
        .collect();
    let cli_same = cli_reports_identical();
    let pass10 = same.len() == CRITERIA.len() && cli_same;
    println!(
        "criterion 10 {}: determinism: {}/9 criterion reports byte-identical on rerun, CLI reports identical modulo timestamp: {cli_same}; {:.2}s",
        if pass10 { "PASS" } else { "FAIL" },
        same.len(),
        start.elapsed().as_secs_f64()
    );
    if !pass10 {
        failed_unexpected.push(10);
    }
    if failed_unexpected.is_empty() {
        println!("acceptance: all criteria pass except known deviations {KNOWN_DEVIATIONS:?}");
    } else {
        println!("acceptance: unexpected failures {failed_unexpected:?}");
        std::process::exit(1);
    }
}
