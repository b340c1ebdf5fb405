//! Independent re-checking of report claims with the geometry predicates
//! only; none of the search code is rerun.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use collinear_core::conic::carrier_line;
use collinear_core::geometry::approx::count_directions_approx;
use collinear_core::geometry::{direction_of, similar_rel_line, Conic};
use collinear_core::search::{Config129, Config63, KSystem};
use collinear_core::triples::{avoiding_one_sided, build_triples, mutually_avoiding, verify_order, Class, Edge, LabeledSets, TripleSystem};
use collinear_core::HPoint;

use crate::commands::read_file;
use crate::pointset::{all_pairs, parse_pairs, parse_pointset, sha256_hex, PointData};
use crate::report::{Claim, InputRef, PairsSpec, Report, Status};
use crate::CliError;

/// A path from a report: as given if it exists, otherwise relative to the
/// report's directory.
fn locate(path: &str, report_dir: &Path) -> PathBuf {
    let p = PathBuf::from(path);
    if p.exists() || p.is_absolute() {
        p
    } else {
        report_dir.join(p)
    }
}

fn checked_read(r: &InputRef, report_dir: &Path, override_path: Option<&Path>) -> Result<(PathBuf, Vec<u8>), CliError> {
    let path = override_path.map(Path::to_path_buf).unwrap_or_else(|| locate(&r.path, report_dir));
    let bytes = read_file(&path)?;
    let actual = sha256_hex(&bytes);
    if actual != r.sha256 {
        return Err(CliError::HashMismatch { path: path.display().to_string(), expected: r.sha256.clone(), actual });
    }
    Ok((path, bytes))
}

struct Ctx<'a> {
    data: &'a PointData,
    report_dir: &'a Path,
    pairs_input: Option<&'a InputRef>,
    conic: Option<Conic>,
    triples: Option<TripleSystem>,
}

impl Ctx<'_> {
    fn sets(&self) -> Result<&LabeledSets, String> {
        match self.data {
            PointData::Exact(s) => Ok(s),
            PointData::Approx(_) => Err("claim needs exact coordinates".into()),
        }
    }

    fn triples(&mut self) -> Result<&TripleSystem, String> {
        if self.triples.is_none() {
            self.triples = Some(build_triples(self.sets()?));
        }
        Ok(self.triples.as_ref().unwrap())
    }

    fn edge_collinear(&self, e: &Edge) -> Result<bool, String> {
        let s = self.sets()?;
        let [na, nb, nc] = s.sizes();
        if e.a >= na || e.b >= nb || e.c >= nc {
            return Err(format!("edge {e} out of range"));
        }
        Ok(s.is_collinear(e))
    }

    fn all_collinear(&self, edges: &[Edge]) -> Result<(), String> {
        for e in edges {
            if !self.edge_collinear(e)? {
                return Err(format!("points of {e} are not collinear"));
            }
        }
        Ok(())
    }

    fn pairs(&self, spec: &PairsSpec, n: usize) -> Result<Vec<(usize, usize)>, String> {
        match spec {
            PairsSpec::All => Ok(all_pairs(n)),
            PairsSpec::File(f) => {
                let r = self.pairs_input.filter(|r| &r.path == f).ok_or("pairs file is not a hashed input")?;
                let (_, bytes) = checked_read(r, self.report_dir, None).map_err(|e| e.to_string())?;
                let v = parse_pairs(&String::from_utf8_lossy(&bytes)).map_err(|e| e.to_string())?;
                if v.iter().any(|&(i, j)| i >= n || j >= n || i == j) {
                    return Err("pair out of range".into());
                }
                Ok(v)
            }
        }
    }

    fn check(&mut self, claim: &Claim) -> Result<(), String> {
        let ensure = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
        match claim {
            Claim::Triple(e) => ensure(self.edge_collinear(e)?, "not collinear"),
            Claim::Config63 { edges, ids } => {
                ensure(Config63::from_edges(*edges).is_some(), "edges do not form a (6,3) configuration")?;
                self.all_collinear(edges)?;
                let t = self.triples()?;
                for (e, &id) in edges.iter().zip(ids) {
                    ensure(t.edge_id(e) == Some(id), &format!("edge {e} does not have id {id}"))?;
                }
                Ok(())
            }
            Claim::TicTacToe(ttt) => {
                let all: Vec<Edge> = ttt.rows.iter().chain(&ttt.cols).copied().collect();
                self.all_collinear(&all)?;
                let sizes = self.sets()?.sizes();
                ensure(ttt.verify(&TripleSystem::from_edges(sizes, all)), "rows and columns do not form a 3x3 board")
            }
            Claim::Config129(edges) => {
                self.all_collinear(edges)?;
                let sizes = self.sets()?.sizes();
                let c = Config129 { edges: *edges };
                ensure(c.verify(&TripleSystem::from_edges(sizes, edges.iter().copied())), "not nine distinct edges on twelve vertices")
            }
            Claim::KSystem(sys) => self.check_ksystem(sys),
            Claim::Conic { conic, rank } => {
                self.conic = Some(conic.clone());
                ensure(conic.rank() == *rank, &format!("rank is {}, not {rank}", conic.rank()))
            }
            Claim::OnConic { class, indices } => {
                let conic = self.conic.as_ref().ok_or("no preceding conic claim")?;
                let s = self.sets()?.set(*class);
                for &i in indices {
                    let p = s.get(i).ok_or_else(|| format!("index {i} out of range"))?;
                    ensure(conic.contains(p), &format!("{class} {i} is not on the conic"))?;
                }
                Ok(())
            }
            Claim::Order { perm } => {
                let s = self.sets()?;
                let mut new_sets: Vec<Vec<HPoint>> = Vec::new();
                for class in Class::ALL {
                    let p = &perm[class.index()];
                    let old = s.set(class);
                    let distinct: BTreeSet<usize> = p.iter().copied().collect();
                    ensure(p.len() == old.len() && distinct.len() == p.len() && p.iter().all(|&i| i < old.len()), "not a permutation")?;
                    new_sets.push(p.iter().map(|&i| old[i].clone()).collect());
                }
                let [a, b, c]: [Vec<HPoint>; 3] = new_sets.try_into().unwrap();
                let reordered = LabeledSets::new(a, b, c, s.c_at_infinity).map_err(|e| e.to_string())?;
                verify_order(&build_triples(&reordered)).map_err(|v| format!("rule {} broken by {} and {}", v.rule, v.first, v.second))
            }
            Claim::Similar { base, partner } => {
                let s = self.sets()?;
                let a = s.set(Class::A);
                let pick = |t: &[usize; 3]| -> Result<[HPoint; 3], String> {
                    let v: Vec<HPoint> = t.iter().map(|&i| a.get(i).cloned().ok_or("index out of range")).collect::<Result<_, _>>()?;
                    Ok(v.try_into().unwrap())
                };
                let line = carrier_line(s).map_err(|e| e.to_string())?;
                let w = similar_rel_line(&pick(base)?, &pick(partner)?, &line).map_err(|e| e.to_string())?;
                ensure(w.is_some(), "corresponding sides do not meet on the line of C")
            }
            Claim::MutuallyAvoiding => ensure(mutually_avoiding(self.sets()?).holds, "not mutually avoiding"),
            Claim::OneSidedAvoiding => ensure(avoiding_one_sided(self.sets()?).holds, "not one-sided avoiding"),
            Claim::DirectionCount { pairs, count, tolerance } => {
                let found = match self.data {
                    PointData::Approx(pts) => {
                        let tol: f64 = tolerance.as_deref().ok_or("approximate count needs a tolerance")?.parse().map_err(|_| "bad tolerance")?;
                        count_directions_approx(pts, &self.pairs(pairs, pts.len())?, tol)
                    }
                    PointData::Exact(s) => {
                        let a = s.set(Class::A);
                        let mut dirs = BTreeSet::new();
                        for (i, j) in self.pairs(pairs, a.len())? {
                            dirs.insert(direction_of(&a[i], &a[j]).map_err(|e| e.to_string())?);
                        }
                        dirs.len()
                    }
                };
                ensure(found == *count, &format!("{found} directions, not {count}"))
            }
        }
    }

    fn check_ksystem(&self, sys: &KSystem) -> Result<(), String> {
        let k = sys.k;
        let square = |v: &Vec<Vec<usize>>| v.len() == k && v.iter().all(|b| b.len() == k);
        if k == 0 || !square(&sys.a_blocks) || !square(&sys.c_blocks) || !square(&sys.centers) {
            return Err(format!("blocks are not {k} x {k}"));
        }
        for blocks in [&sys.a_blocks, &sys.c_blocks] {
            let all: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
            if all.len() != k * k {
                return Err("block vertices repeat".into());
            }
        }
        self.all_collinear(&sys.edges())
    }
}

/// Re-verifies every claim of `target`. Hash mismatches are input errors;
/// a false claim makes the verification fail.
pub fn verify_report(target: &Path, input_override: Option<&Path>) -> Result<Report, CliError> {
    let text = String::from_utf8(read_file(target)?).map_err(|_| CliError::Input("report is not UTF-8".into()))?;
    let report = Report::parse(&text)?;
    let dir = target.parent().unwrap_or(Path::new(""));
    let points = report.input("points").ok_or_else(|| CliError::Input("report names no points input".into()))?;
    let (path, bytes) = checked_read(points, dir, input_override)?;
    let data = parse_pointset(&String::from_utf8_lossy(&bytes))?;

    let mut out = Report::new("verify");
    out.inputs.push(InputRef { role: "report".into(), path: target.display().to_string(), sha256: sha256_hex(text.as_bytes()) });
    out.inputs.push(InputRef { role: "points".into(), path: path.display().to_string(), sha256: points.sha256.clone() });
    out.stat("claims", report.claims.len());

    let mut ctx = Ctx { data: &data, report_dir: dir, pairs_input: report.input("pairs"), conic: None, triples: None };
    let mut failed = 0;
    for (i, claim) in report.claims.iter().enumerate() {
        match ctx.check(claim) {
            Ok(()) => out.stat("check", format!("{i} pass {claim}")),
            Err(why) => {
                failed += 1;
                out.stat("check", format!("{i} fail {claim} ({why})"));
            }
        }
    }
    out.stat("failed", failed);
    out.status = if failed == 0 { Status::Ok } else { Status::Failed };
    Ok(out)
}
