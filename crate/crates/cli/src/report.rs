//! Line-oriented run reports (`collinear-report v1`).
//!
//! ```text
//! collinear-report v1
//! command <name>
//! timestamp <unix seconds>
//! input <role> <path> sha256 <hex>
//! param <key> <value>
//! status <found|not-found|hypothesis-violated|ok>
//! stat <key> <value...>
//! claim <tag> key=value ...
//! ```
//!
//! The timestamp line is the only field that varies between identical runs.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use collinear_core::geometry::Conic;
use collinear_core::search::{BlockOrientation, KSystem, TicTacToe};
use collinear_core::triples::{Class, Edge};
use num_bigint::BigInt;

use crate::CliError;

pub const HEADER: &str = "collinear-report v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Found,
    NotFound,
    HypothesisViolated,
    /// A verification found a false claim.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Found => 0,
            Status::NotFound | Status::Failed => 1,
            Status::HypothesisViolated => 2,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Found => "found",
            Status::NotFound => "not-found",
            Status::HypothesisViolated => "hypothesis-violated",
            Status::Failed => "failed",
        }
    }
}

impl FromStr for Status {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        [Status::Ok, Status::Found, Status::NotFound, Status::HypothesisViolated, Status::Failed]
            .into_iter()
            .find(|st| st.tag() == s)
            .ok_or_else(|| CliError::Input(format!("unknown status `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairsSpec {
    All,
    File(String),
}

impl fmt::Display for PairsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairsSpec::All => f.write_str("all"),
            PairsSpec::File(p) => f.write_str(p),
        }
    }
}

impl PairsSpec {
    pub fn parse(s: &str) -> PairsSpec {
        if s == "all" {
            PairsSpec::All
        } else {
            PairsSpec::File(s.to_string())
        }
    }
}

/// A checkable statement about the input pointset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Triple(Edge),
    /// `ids` index the lexicographically sorted triple list of the input.
    Config63 { edges: [Edge; 3], ids: [usize; 3] },
    TicTacToe(TicTacToe),
    Config129([Edge; 9]),
    KSystem(KSystem),
    Conic { conic: Conic, rank: u8 },
    /// Points of `class` on the most recent conic claim.
    OnConic { class: Class, indices: Vec<usize> },
    /// `perm[class][new] = old`; the reordered triples satisfy the
    /// monotonicity rules.
    Order { perm: [Vec<usize>; 3] },
    /// Two A-triples similar relative to the carrier line of C.
    Similar { base: [usize; 3], partner: [usize; 3] },
    MutuallyAvoiding,
    OneSidedAvoiding,
    /// Distinct directions among the pairs of set A.
    DirectionCount { pairs: PairsSpec, count: usize, tolerance: Option<String> },
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn blocks(v: &[Vec<usize>]) -> String {
    v.iter().map(|b| join(b, ",")).collect::<Vec<_>>().join(";")
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Triple(e) => write!(f, "triple edge={e}"),
            Claim::Config63 { edges, ids } => write!(f, "config63 edges={} ids={}", join(edges, ";"), join(ids, ",")),
            Claim::TicTacToe(t) => write!(f, "ttt rows={} cols={}", join(&t.rows, ";"), join(&t.cols, ";")),
            Claim::Config129(e) => write!(f, "config129 edges={}", join(e, ";")),
            Claim::KSystem(s) => write!(
                f,
                "ksystem k={} orientation={} a={} c={} centers={}",
                s.k,
                match s.orientation {
                    BlockOrientation::Ascending => "ascending",
                    BlockOrientation::Descending => "descending",
                },
                blocks(&s.a_blocks),
                blocks(&s.c_blocks),
                blocks(&s.centers)
            ),
            Claim::Conic { conic, rank } => write!(f, "conic coeffs={} rank={rank}", join(conic.coeffs(), ",")),
            Claim::OnConic { class, indices } => write!(f, "on-conic class={class} indices={}", join(indices, ",")),
            Claim::Order { perm } => write!(f, "order a={} b={} c={}", join(&perm[0], ","), join(&perm[1], ","), join(&perm[2], ",")),
            Claim::Similar { base, partner } => write!(f, "similar base={} partner={}", join(base, ","), join(partner, ",")),
            Claim::MutuallyAvoiding => f.write_str("mutually-avoiding"),
            Claim::OneSidedAvoiding => f.write_str("one-sided-avoiding"),
            Claim::DirectionCount { pairs, count, tolerance } => {
                write!(f, "direction-count pairs={pairs} count={count}")?;
                if let Some(t) = tolerance {
                    write!(f, " tolerance={t}")?;
                }
                Ok(())
            }
        }
    }
}

fn bad(what: &str) -> CliError {
    CliError::Input(format!("malformed claim: {what}"))
}

fn list(s: &str) -> Result<Vec<usize>, CliError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.parse().map_err(|_| bad(s))).collect()
}

fn block_list(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(';').map(list).collect()
}

fn edge(s: &str) -> Result<Edge, CliError> {
    let v: Vec<usize> = s.split(':').map(|x| x.parse().map_err(|_| bad(s))).collect::<Result<_, _>>()?;
    let [a, b, c] = v[..] else { return Err(bad(s)) };
    Ok(Edge::new(a, b, c))
}

fn edges<const N: usize>(s: &str) -> Result<[Edge; N], CliError> {
    let v: Vec<Edge> = s.split(';').map(edge).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| bad(s))
}

fn triple(s: &str) -> Result<[usize; 3], CliError> {
    list(s)?.try_into().map_err(|_| bad(s))
}

impl FromStr for Claim {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut toks = s.split_whitespace();
        let tag = toks.next().ok_or_else(|| bad(s))?;
        let kv: Vec<(&str, &str)> = toks.map(|t| t.split_once('=').ok_or_else(|| bad(t))).collect::<Result<_, _>>()?;
        let get = |k: &str| kv.iter().find(|(key, _)| *key == k).map(|(_, v)| *v).ok_or_else(|| bad(&format!("{tag} needs {k}")));
        Ok(match tag {
            "triple" => Claim::Triple(edge(get("edge")?)?),
            "config63" => Claim::Config63 { edges: edges(get("edges")?)?, ids: triple(get("ids")?)? },
            "ttt" => Claim::TicTacToe(TicTacToe { rows: edges(get("rows")?)?, cols: edges(get("cols")?)? }),
            "config129" => Claim::Config129(edges(get("edges")?)?),
            "ksystem" => Claim::KSystem(KSystem {
                k: get("k")?.parse().map_err(|_| bad("k"))?,
                orientation: match get("orientation")? {
                    "ascending" => BlockOrientation::Ascending,
                    "descending" => BlockOrientation::Descending,
                    o => return Err(bad(o)),
                },
                a_blocks: block_list(get("a")?)?,
                c_blocks: block_list(get("c")?)?,
                centers: block_list(get("centers")?)?,
            }),
            "conic" => {
                let c: Vec<BigInt> = get("coeffs")?.split(',').map(|x| x.parse().map_err(|_| bad(x))).collect::<Result<_, _>>()?;
                let c: [BigInt; 6] = c.try_into().map_err(|_| bad("six coefficients"))?;
                Claim::Conic {
                    conic: Conic::from_integers(c).map_err(|e| CliError::Input(e.to_string()))?,
                    rank: get("rank")?.parse().map_err(|_| bad("rank"))?,
                }
            }
            "on-conic" => Claim::OnConic {
                class: match get("class")? {
                    "A" => Class::A,
                    "B" => Class::B,
                    "C" => Class::C,
                    c => return Err(bad(c)),
                },
                indices: list(get("indices")?)?,
            },
            "order" => Claim::Order { perm: [list(get("a")?)?, list(get("b")?)?, list(get("c")?)?] },
            "similar" => Claim::Similar { base: triple(get("base")?)?, partner: triple(get("partner")?)? },
            "mutually-avoiding" => Claim::MutuallyAvoiding,
            "one-sided-avoiding" => Claim::OneSidedAvoiding,
            "direction-count" => Claim::DirectionCount {
                pairs: PairsSpec::parse(get("pairs")?),
                count: get("count")?.parse().map_err(|_| bad("count"))?,
                tolerance: get("tolerance").ok().map(str::to_string),
            },
            _ => return Err(bad(tag)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputRef {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub timestamp: Option<u64>,
    pub inputs: Vec<InputRef>,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub stats: Vec<(String, String)>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            timestamp: None,
            inputs: Vec::new(),
            params: Vec::new(),
            status: Status::Ok,
            stats: Vec::new(),
            claims: Vec::new(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl fmt::Display) {
        self.params.push((k.into(), v.to_string()));
    }

    pub fn stat(&mut self, k: &str, v: impl fmt::Display) {
        self.stats.push((k.into(), v.to_string()));
    }

    pub fn input(&self, role: &str) -> Option<&InputRef> {
        self.inputs.iter().find(|i| i.role == role)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        writeln!(out, "command {}", self.command).unwrap();
        if let Some(t) = self.timestamp {
            writeln!(out, "timestamp {t}").unwrap();
        }
        for i in &self.inputs {
            writeln!(out, "input {} {} sha256 {}", i.role, i.path, i.sha256).unwrap();
        }
        for (k, v) in &self.params {
            writeln!(out, "param {k} {v}").unwrap();
        }
        writeln!(out, "status {}", self.status.tag()).unwrap();
        for (k, v) in &self.stats {
            writeln!(out, "stat {k} {v}").unwrap();
        }
        for c in &self.claims {
            writeln!(out, "claim {c}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report, CliError> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(CliError::Input(format!("not a report: first line must be `{HEADER}`")));
        }
        let mut r = Report::new("");
        let mut status = None;
        for (no, l) in lines.enumerate() {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            let err = || CliError::Input(format!("report line {}: `{l}`", no + 2));
            let (key, rest) = l.split_once(' ').ok_or_else(err)?;
            match key {
                "command" => r.command = rest.into(),
                "timestamp" => r.timestamp = Some(rest.parse().map_err(|_| err())?),
                "input" => {
                    let t: Vec<&str> = rest.split(' ').collect();
                    let [role, path, "sha256", hash] = t[..] else { return Err(err()) };
                    r.inputs.push(InputRef { role: role.into(), path: path.into(), sha256: hash.into() });
                }
                "param" => {
                    let (k, v) = rest.split_once(' ').ok_or_else(err)?;
                    r.params.push((k.into(), v.into()));
                }
                "status" => status = Some(rest.parse()?),
                "stat" => {
                    let (k, v) = rest.split_once(' ').ok_or_else(err)?;
                    r.stats.push((k.into(), v.into()));
                }
                "claim" => r.claims.push(rest.parse()?),
                _ => return Err(err()),
            }
        }
        r.status = status.ok_or_else(|| CliError::Input("report has no status line".into()))?;
        Ok(r)
    }
}

/// The report text without its timestamp line.
pub fn strip_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("timestamp ")).map(|l| format!("{l}\n")).collect()
}
