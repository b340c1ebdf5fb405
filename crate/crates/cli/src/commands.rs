//! One function per subcommand; each returns the run report.

use std::path::{Path, PathBuf};

use collinear_core::conic::{
    convex_few_directions, direction_instance, direction_instance_approx, extract_conic, ConicError, ExtractOptions, Mode,
    ModeChoice,
};
use collinear_core::generators::{generate, GenKind, GenSpec, Generated, Planted};
use collinear_core::search::{
    assemble_k_system, branch_bipartite_graph, branch_tuples, find_663, find_biclique, find_k_branches, find_skinny_663,
    find_tictactoe, partition_blocks, DoubleSide, SearchParams, TttStrategy,
};
use collinear_core::triples::{avoiding_one_sided, build_triples, canonical_order, mutually_avoiding, Class, LabeledSets, TripleSystem};
use collinear_core::Rat;

use crate::pointset::{all_pairs, parse_pairs, parse_pointset, sha256_hex, write_approx, write_pointset, write_triples, PointData};
use crate::report::{Claim, InputRef, PairsSpec, Report, Status};
use crate::{verify, CliError, Command, SearchArgs};

pub const POINTS_FILE: &str = "points.txt";
pub const PLANTED_FILE: &str = "planted.txt";

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Generate { kind, n, k, seed, out } => cmd_generate(kind, *n, *k, *seed, out),
        Command::Triples { input, out } => cmd_triples(input, out.as_deref()),
        Command::Order { input, out } => cmd_order(input, out.as_deref()),
        Command::Search663 { input, search, skinny, limit } => cmd_search_663(input, search, *skinny, *limit),
        Command::SearchTtt { input, search, strategy } => cmd_search_ttt(input, search, strategy),
        Command::SearchKsystem { input, search } => cmd_search_ksystem(input, search),
        Command::ExtractConic { input, search, mode } => cmd_extract_conic(input, search, mode),
        Command::Directions { input, pairs, conic, tolerance, seed } => cmd_directions(input, pairs, *conic, *tolerance, *seed),
        Command::Verify { target, input } => verify::verify_report(target, input.as_deref()),
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A directory stands for its `points.txt`.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join(POINTS_FILE)
    } else {
        path.to_path_buf()
    }
}

pub struct Loaded {
    pub data: PointData,
    pub input: InputRef,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let file = resolve_input(path);
    let bytes = read_file(&file)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input(format!("{}: not UTF-8", file.display())))?;
    let data = parse_pointset(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let input = InputRef { role: "points".into(), path: file.display().to_string(), sha256: sha256_hex(&bytes) };
    Ok(Loaded { data, input })
}

fn load_exact(path: &Path, report: &mut Report) -> Result<(LabeledSets, TripleSystem), CliError> {
    let l = load(path)?;
    report.inputs.push(l.input);
    let sets = l.data.exact()?.clone();
    let t = build_triples(&sets);
    let [na, nb, nc] = sets.sizes();
    report.stat("sizes", format!("{na} {nb} {nc}"));
    report.stat("triples", t.len());
    Ok((sets, t))
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    s.parse().map_err(|_| CliError::Input(format!("--delta: `{s}` is not a rational number")))
}

/// Defaults from the density of `t`, then the explicit flags, then
/// validation. Every resolved value is recorded.
pub fn resolve_params(t: &TripleSystem, args: &SearchArgs, report: &mut Report) -> Result<SearchParams, CliError> {
    let mut p = match &args.delta {
        Some(d) => SearchParams::from_delta(parse_rat(d)?, t.n().max(1)).map_err(|e| CliError::Input(e.to_string()))?,
        None => SearchParams::for_system(t),
    };
    if let Some(m) = args.block_size {
        p.block_size = m;
    }
    if let Some(n) = args.skinny_bound {
        p.skinny_bound = n;
    }
    if let Some(k) = args.k {
        p.k = k;
    }
    p.exhaustive = args.exhaustive;
    p.validate().map_err(|e| CliError::Input(e.to_string()))?;
    report.param("delta", &p.delta);
    report.param("block-size", p.block_size);
    report.param("skinny-bound", p.skinny_bound);
    report.param("epsilon", &p.epsilon);
    report.param("k", p.k);
    report.param("exhaustive", p.exhaustive);
    report.param("seed", args.seed);
    Ok(p)
}

fn default_n(kind: GenKind) -> usize {
    match kind {
        GenKind::Grid | GenKind::Ngon => 5,
        GenKind::ConicInstance | GenKind::MutuallyAvoiding => 20,
        GenKind::Parallel => 30,
        GenKind::DegenerateFamily | GenKind::KSystem | GenKind::PascalTtt => 0,
    }
}

/// `--out` names a directory (existing, ending in `/`, or without an
/// extension) receiving `points.txt` and `planted.txt`, or a pointset file
/// whose sidecar is `<file>.planted`.
fn output_paths(out: &Path) -> (PathBuf, PathBuf) {
    let s = out.to_string_lossy();
    if out.is_dir() || s.ends_with('/') || out.extension().is_none() {
        (out.join(POINTS_FILE), out.join(PLANTED_FILE))
    } else {
        let mut side = out.as_os_str().to_owned();
        side.push(".planted");
        (out.to_path_buf(), PathBuf::from(side))
    }
}

fn cmd_generate(kind: &str, n: Option<usize>, k: usize, seed: u64, out: &Path) -> Result<Report, CliError> {
    let kind = GenKind::from_tag(kind).ok_or_else(|| {
        let tags: Vec<&str> = GenKind::ALL.iter().map(|k| k.tag()).collect();
        CliError::Input(format!("unknown kind `{kind}`; expected one of {}", tags.join(", ")))
    })?;
    let spec = GenSpec { kind, n: n.unwrap_or_else(|| default_n(kind)), k, seed };
    let generated = generate(&spec).map_err(|e| CliError::Input(e.to_string()))?;

    let mut r = Report::new("generate");
    r.param("kind", kind.tag());
    r.param("n", spec.n);
    r.param("k", spec.k);
    r.param("seed", seed);

    let text = match &generated {
        Generated::Exact(inst) => write_pointset(&inst.sets),
        Generated::Approx(pts) => write_approx(pts),
    };
    let (points_path, planted_path) = output_paths(out);
    if let Some(dir) = points_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    }
    write_file(&points_path, &text)?;
    // The sidecar lives next to the pointset, so the path is relative to it.
    let name = points_path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    r.inputs.push(InputRef { role: "points".into(), path: name, sha256: sha256_hex(text.as_bytes()) });

    match generated {
        Generated::Approx(pts) => {
            let count = collinear_core::geometry::approx::count_directions_approx(
                &pts,
                &all_pairs(pts.len()),
                collinear_core::geometry::approx::DEFAULT_TOLERANCE,
            );
            r.stat("points", pts.len());
            r.claims.push(Claim::DirectionCount {
                pairs: PairsSpec::All,
                count,
                tolerance: Some(format!("{:?}", collinear_core::geometry::approx::DEFAULT_TOLERANCE)),
            });
        }
        Generated::Exact(inst) => {
            let [na, nb, nc] = inst.sets.sizes();
            r.stat("sizes", format!("{na} {nb} {nc}"));
            r.stat("triples", inst.triples.len());
            match inst.planted {
                Planted::None => {}
                Planted::Conic { conic, b_indices } => {
                    r.claims.push(Claim::Conic { rank: conic.rank(), conic });
                    r.claims.push(Claim::OnConic { class: Class::B, indices: b_indices });
                }
                Planted::KSystem(sys) => {
                    r.stat("ksystem-edges", sys.edges().len());
                    r.claims.push(Claim::KSystem(sys));
                }
                Planted::Pascal { ttt, conic } => {
                    r.claims.push(Claim::TicTacToe(ttt));
                    r.claims.push(Claim::Conic { rank: conic.rank(), conic });
                    r.claims.push(Claim::OnConic { class: Class::A, indices: vec![0, 1, 2] });
                    r.claims.push(Claim::OnConic { class: Class::B, indices: vec![0, 1, 2] });
                }
                Planted::Degenerate { positions } => {
                    r.stat("positions", positions.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
                    r.claims.push(Claim::Similar { base: [0, 1, 2], partner: [3, 4, 5] });
                }
            }
            if kind == GenKind::MutuallyAvoiding {
                r.claims.push(Claim::MutuallyAvoiding);
            }
            if kind == GenKind::KSystem && avoiding_one_sided(&inst.sets).holds {
                r.claims.push(Claim::OneSidedAvoiding);
            }
        }
    }
    write_file(&planted_path, &r.render())?;
    r.stat("points-file", points_path.display());
    r.stat("planted-file", planted_path.display());
    Ok(r)
}

fn cmd_triples(input: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let mut r = Report::new("triples");
    let (_, t) = load_exact(input, &mut r)?;
    r.stat("linear", t.is_linear());
    if let Some(out) = out {
        let inp = &r.inputs[0];
        write_file(out, &write_triples(&t, &inp.path, &inp.sha256))?;
    }
    r.claims.extend(t.edges().iter().map(|e| Claim::Triple(*e)));
    Ok(r)
}

fn cmd_order(input: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let mut r = Report::new("order");
    let (sets, t) = load_exact(input, &mut r)?;
    let mutual = mutually_avoiding(&sets).holds;
    r.stat("mutually-avoiding", mutual);
    match canonical_order(&sets, &t) {
        Ok(ord) => {
            r.stat("strategy", ord.certificate.strategy.replace('\n', " "));
            r.stat("edges-checked", ord.certificate.edges_checked);
            if let Some(out) = out {
                write_file(out, &write_pointset(&ord.sets))?;
            }
            if mutual {
                r.claims.push(Claim::MutuallyAvoiding);
            }
            r.claims.push(Claim::Order { perm: ord.certificate.perm });
        }
        Err(e) => {
            r.status = Status::HypothesisViolated;
            r.stat("error", e);
        }
    }
    Ok(r)
}

fn cmd_search_663(input: &Path, args: &SearchArgs, skinny: bool, limit: usize) -> Result<Report, CliError> {
    let mut r = Report::new("search-663");
    let (_, t) = load_exact(input, &mut r)?;
    let params = resolve_params(&t, args, &mut r)?;
    r.param("skinny", skinny);
    r.param("limit", limit);
    let configs = if skinny {
        let res = find_skinny_663(&t, &params, args.seed);
        r.stat("pruned-remaining", res.pruned.len());
        r.stat("prune-rounds", res.prune_report.rounds);
        r.stat("found-in-blocks", res.found);
        r.stat(
            "double-side",
            match res.side {
                DoubleSide::Smaller => "smaller",
                DoubleSide::Larger => "larger",
            },
        );
        res.configs
    } else {
        find_663(&t, None)
    };
    r.stat("configurations", configs.len());
    r.status = if configs.is_empty() { Status::NotFound } else { Status::Found };
    for c in configs.iter().take(limit) {
        let ids = c.edges.map(|e| t.edge_id(&e).expect("configuration edges come from the system"));
        r.claims.push(Claim::Config63 { edges: c.edges, ids });
    }
    Ok(r)
}

fn cmd_search_ttt(input: &Path, args: &SearchArgs, strategy: &str) -> Result<Report, CliError> {
    let strategy = match strategy {
        "auto" => TttStrategy::Auto,
        "direct" => TttStrategy::Direct,
        "pipeline" => TttStrategy::Pipeline,
        s => return Err(CliError::Input(format!("--strategy: expected auto, direct or pipeline, got `{s}`"))),
    };
    let mut r = Report::new("search-ttt");
    let (_, t) = load_exact(input, &mut r)?;
    let params = resolve_params(&t, args, &mut r)?;
    r.param("strategy", format!("{strategy:?}").to_lowercase());
    match find_tictactoe(&t, &params, args.seed, strategy) {
        Some(res) => {
            r.status = Status::Found;
            r.stat("used", format!("{:?}", res.strategy).to_lowercase());
            r.claims.push(Claim::TicTacToe(res.ttt));
            if let Some(c) = res.config129 {
                r.claims.push(Claim::Config129(c.edges));
            }
        }
        None => r.status = Status::NotFound,
    }
    Ok(r)
}

fn cmd_search_ksystem(input: &Path, args: &SearchArgs) -> Result<Report, CliError> {
    let mut r = Report::new("search-ksystem");
    let (sets, t) = load_exact(input, &mut r)?;
    let k = args.k.unwrap_or(3);
    let mut args = args.clone();
    args.k = Some(k);
    args.block_size = Some(args.block_size.unwrap_or(k));
    let params = resolve_params(&t, &args, &mut r)?;
    r.stat("one-sided-avoiding", avoiding_one_sided(&sets).holds);
    let part = partition_blocks(&t, params.block_size).map_err(|e| CliError::Input(e.to_string()))?;
    let kb = find_k_branches(&t, &part, k);
    let (a_tuples, c_tuples) = branch_tuples(&kb.branches);
    let bg = branch_bipartite_graph(&kb.branches, &a_tuples, &c_tuples);
    r.stat("branches", kb.branches.len());
    r.stat("branch-graph", format!("{} {} {}", a_tuples.len(), c_tuples.len(), bg.graph.edge_count()));
    let Some(bic) = find_biclique(&bg.graph, k, k) else {
        r.status = Status::NotFound;
        return Ok(r);
    };
    match assemble_k_system(&bic, &bg, &kb.branches, &t) {
        Ok(sys) => {
            r.status = Status::Found;
            r.stat("ksystem-edges", sys.edges().len());
            r.stat("distinct-points", sys.distinct_points());
            r.claims.push(Claim::KSystem(sys));
        }
        Err(e) => {
            r.status = Status::NotFound;
            r.stat("assembly-error", e);
        }
    }
    Ok(r)
}

fn parse_mode(s: &str) -> Result<ModeChoice, CliError> {
    match s {
        "auto" => Ok(ModeChoice::Auto),
        "t1" => Ok(ModeChoice::Only(Mode::T1)),
        "t2" => Ok(ModeChoice::Only(Mode::T2)),
        _ => Err(CliError::Input(format!("--mode: expected t1, t2 or auto, got `{s}`"))),
    }
}

fn join<T: std::fmt::Display>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Exit status for a pipeline error: missing structure is "not found",
/// unmet hypotheses and internal disagreements are "violated".
fn conic_error_status(e: &ConicError) -> Result<Status, CliError> {
    match e {
        ConicError::NoBranchPair => Ok(Status::NotFound),
        ConicError::Params(p) => Err(CliError::Input(p.to_string())),
        ConicError::InvalidPair(_) | ConicError::Sets(_) | ConicError::Triples(_) => Err(CliError::Input(e.to_string())),
        _ => Ok(Status::HypothesisViolated),
    }
}

fn record_conic_error(r: &mut Report, e: ConicError) -> Result<(), CliError> {
    r.status = conic_error_status(&e)?;
    r.stat("error", &e);
    if let ConicError::Degenerate(d) = e {
        r.stat("witness-mode", d.witness.mode.name());
        r.stat("witness-ratio", &d.witness.ratio);
        r.stat("witness-triple", join(d.witness.triple.iter().map(|(a, b)| format!("({a},{b})"))));
        r.stat("map", join(d.map.matrix().iter().flatten()));
        if let Some(s) = &d.similarity {
            r.stat("similar-meets", join(s.meets.iter().map(|p| format!("{p}"))));
        }
        r.claims.push(Claim::Similar { base: d.pair.base, partner: d.pair.partner });
    }
    Ok(())
}

fn cmd_extract_conic(input: &Path, args: &SearchArgs, mode: &str) -> Result<Report, CliError> {
    let mode = parse_mode(mode)?;
    let mut r = Report::new("extract-conic");
    let (sets, t) = load_exact(input, &mut r)?;
    let params = resolve_params(&t, args, &mut r)?;
    r.param("mode", match mode {
        ModeChoice::Auto => "auto",
        ModeChoice::Only(m) => m.name(),
    });
    r.stat("one-sided-avoiding", avoiding_one_sided(&sets).holds);
    let opts = ExtractOptions { mode, params: Some(params), seed: args.seed };
    match extract_conic(&sets, &t, &opts) {
        Ok(x) => {
            r.status = Status::Found;
            r.stat("used-mode", x.mode.name());
            r.stat("map", join(x.map.matrix().iter().flatten()));
            r.stat("poly", &x.poly);
            r.stat("normalized-conic", join(x.normalized_conic.coeffs()));
            r.stat("base", join(x.pair.base));
            r.stat("partner", join(x.pair.partner));
            r.stat("common-branches", x.pair.common.len());
            r.stat("pruned-remaining", x.prune.remaining);
            r.claims.push(Claim::Conic { conic: x.conic.clone(), rank: x.rank });
            r.claims.push(Claim::OnConic { class: Class::B, indices: x.on_conic });
        }
        Err(e) => record_conic_error(&mut r, e)?,
    }
    Ok(r)
}

fn cmd_directions(input: &Path, pairs: &str, conic: bool, tolerance: f64, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("directions");
    let l = load(input)?;
    r.inputs.push(l.input);
    let spec = PairsSpec::parse(pairs);
    let n = match &l.data {
        PointData::Exact(s) => s.sizes()[0],
        PointData::Approx(p) => p.len(),
    };
    let pair_list = match &spec {
        PairsSpec::All => all_pairs(n),
        PairsSpec::File(f) => {
            let bytes = read_file(Path::new(f))?;
            r.inputs.push(InputRef { role: "pairs".into(), path: f.clone(), sha256: sha256_hex(&bytes) });
            parse_pairs(&String::from_utf8_lossy(&bytes))?
        }
    };
    r.param("pairs", &spec);
    r.param("conic", conic);
    r.param("seed", seed);
    r.stat("points", n);
    r.stat("pairs", pair_list.len());
    let result = match &l.data {
        PointData::Approx(pts) => {
            r.param("tolerance", format!("{tolerance:?}"));
            if conic {
                return Err(CliError::Input("--conic needs exact coordinates".into()));
            }
            direction_instance_approx(pts, &pair_list, tolerance).map(|d| {
                r.stat("crossing-directions", d.crossing_direction_count);
                r.stat("near", join(&d.near));
                r.stat("far", join(&d.far));
                r.claims.push(Claim::DirectionCount { pairs: spec.clone(), count: d.direction_count, tolerance: Some(format!("{tolerance:?}")) });
            })
        }
        PointData::Exact(sets) => {
            let pts = sets.set(Class::A);
            if conic {
                convex_few_directions(pts, &pair_list, &ExtractOptions { seed, ..Default::default() }).map(|f| {
                    r.stat("crossing-directions", f.instance.crossing_direction_count());
                    r.stat("kept-far", join(&f.kept_far));
                    r.stat("h-pairs", f.h.len());
                    r.claims.push(Claim::DirectionCount { pairs: spec.clone(), count: f.instance.direction_count, tolerance: None });
                    r.claims.push(Claim::Conic { conic: f.conic.clone(), rank: f.conic.rank() });
                    let mut on: Vec<usize> = f.a_star.iter().chain(&f.a_star_star).copied().collect();
                    on.sort();
                    on.dedup();
                    r.claims.push(Claim::OnConic { class: Class::A, indices: on });
                })
            } else {
                direction_instance(pts, &pair_list).map(|d| {
                    r.stat("crossing-directions", d.crossing_direction_count());
                    r.stat("near", join(&d.near));
                    r.stat("far", join(&d.far));
                    r.claims.push(Claim::DirectionCount { pairs: spec.clone(), count: d.direction_count, tolerance: None });
                })
            }
        }
    };
    match result {
        Ok(()) => r.status = Status::Ok,
        Err(e) => record_conic_error(&mut r, e)?,
    }
    Ok(r)
}
