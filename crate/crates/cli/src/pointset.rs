//! Text formats: pointsets (`# set A|B|C [infinity|approximate]`), pair
//! lists and triple exports.

use std::fmt::Write as _;

use collinear_core::geometry::approx::ApproxPoint;
use collinear_core::triples::{Class, LabeledSets, TripleSystem};
use collinear_core::{HPoint, Rat};
use sha2::{Digest, Sha256};

use crate::CliError;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub enum PointData {
    Exact(LabeledSets),
    /// Floating-point set A (regular polygons).
    Approx(Vec<ApproxPoint>),
}

impl PointData {
    pub fn exact(&self) -> Result<&LabeledSets, CliError> {
        match self {
            PointData::Exact(s) => Ok(s),
            PointData::Approx(_) => Err(CliError::Input("this command needs exact coordinates".into())),
        }
    }
}

fn parse_rat(tok: &str, line: usize) -> Result<Rat, CliError> {
    let r: Rat = tok.parse().map_err(|_| CliError::Input(format!("line {line}: bad coordinate `{tok}`")))?;
    Ok(r)
}

/// Parses a pointset file. Sections may come in any order and may be
/// absent (empty set); lines starting with `#` other than set headers are
/// comments.
pub fn parse_pointset(text: &str) -> Result<PointData, CliError> {
    let mut sets: [Vec<HPoint>; 3] = Default::default();
    let mut approx: Vec<ApproxPoint> = Vec::new();
    let mut is_approx = false;
    let mut c_inf = false;
    let mut current: Option<(Class, bool)> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix('#') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.first() != Some(&"set") {
                continue;
            }
            let class = match toks.get(1) {
                Some(&"A") => Class::A,
                Some(&"B") => Class::B,
                Some(&"C") => Class::C,
                _ => return Err(CliError::Input(format!("line {line}: expected `# set A|B|C`"))),
            };
            let flag = toks.get(2).copied();
            match flag {
                None => {}
                Some("infinity") if class == Class::C => c_inf = true,
                Some("approximate") if class == Class::A => is_approx = true,
                Some(f) => return Err(CliError::Input(format!("line {line}: unknown flag `{f}` for set {class}"))),
            }
            current = Some((class, flag == Some("approximate")));
            continue;
        }
        let Some((class, approx_section)) = current else {
            return Err(CliError::Input(format!("line {line}: point before any `# set` header")));
        };
        let toks: Vec<&str> = l.split_whitespace().collect();
        if approx_section {
            let [x, y] = toks[..] else { return Err(CliError::Input(format!("line {line}: expected `x y`"))) };
            let f = |t: &str| t.parse::<f64>().map_err(|_| CliError::Input(format!("line {line}: bad number `{t}`")));
            approx.push((f(x)?, f(y)?));
            continue;
        }
        let p = match toks[..] {
            [x, y] => HPoint::new(parse_rat(x, line)?, parse_rat(y, line)?),
            [x, y, w] => HPoint::from_homogeneous(&parse_rat(x, line)?, &parse_rat(y, line)?, &parse_rat(w, line)?)
                .map_err(|e| CliError::Input(format!("line {line}: {e}")))?,
            _ => return Err(CliError::Input(format!("line {line}: expected `x y` or `x y w`"))),
        };
        sets[class.index()].push(p);
    }
    if is_approx {
        if sets.iter().any(|s| !s.is_empty()) {
            return Err(CliError::Input("approximate files carry a single set A".into()));
        }
        return Ok(PointData::Approx(approx));
    }
    let [a, b, c] = sets;
    LabeledSets::new(a, b, c, c_inf).map(PointData::Exact).map_err(|e| CliError::Input(e.to_string()))
}

fn write_point(out: &mut String, p: &HPoint) {
    match p.to_affine() {
        Some((x, y)) => writeln!(out, "{x} {y}").unwrap(),
        None => {
            let [x, y, w] = p.coords();
            writeln!(out, "{x} {y} {w}").unwrap()
        }
    }
}

pub fn write_pointset(s: &LabeledSets) -> String {
    let mut out = String::new();
    for class in Class::ALL {
        let flag = if class == Class::C && s.c_at_infinity { " infinity" } else { "" };
        writeln!(out, "# set {class}{flag}").unwrap();
        for p in s.set(class) {
            write_point(&mut out, p);
        }
    }
    out
}

pub fn write_approx(pts: &[ApproxPoint]) -> String {
    let mut out = String::from("# set A approximate\n");
    for (x, y) in pts {
        writeln!(out, "{x:?} {y:?}").unwrap();
    }
    out
}

/// `i j` per line; `#` comments.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let bad = || CliError::Input(format!("pairs line {}: expected `i j`", no + 1));
        let [i, j] = toks[..] else { return Err(bad()) };
        out.push((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
    }
    Ok(out)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn write_triples(t: &TripleSystem, points_name: &str, points_hash: &str) -> String {
    let mut out = format!("# triples v1\n# points {points_name} sha256 {points_hash}\n");
    for e in t.edges() {
        writeln!(out, "{} {} {}", e.a, e.b, e.c).unwrap();
    }
    out
}
