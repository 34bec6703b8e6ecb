//! Line arrangements in the projective plane: intersection lattice,
//! restrictions to a line, and the sufficient conditions for Terao's
//! conjecture that are read off the lattice.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};

type Triple = [Rational; 3];

fn canonical(mut v: Triple) -> Option<Triple> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    for c in v.iter_mut() {
        *c /= &lead;
    }
    Some(v)
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &Triple, b: &Triple) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The line `ax + by + cz = 0`, scaled so the first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine {
    coords: Triple,
}

impl ProjLine {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        canonical([a, b, c])
            .map(|coords| ProjLine { coords })
            .ok_or_else(|| Error::InvalidInput("a line needs a nonzero coefficient".into()))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c))
    }

    pub fn coords(&self) -> &Triple {
        &self.coords
    }

    pub fn contains(&self, point: &Triple) -> bool {
        dot(&self.coords, point).is_zero()
    }
}

impl std::fmt::Display for ProjLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "[{a}:{b}:{c}]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<ProjLine>,
}

impl LineArrangement {
    pub fn new(lines: Vec<ProjLine>) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            if lines[..i].contains(l) {
                return Err(Error::InvalidInput(format!("line {l} appears twice")));
            }
        }
        Ok(LineArrangement { lines })
    }

    /// Parses `[["a", "b", "c"], ...]` with rational strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let lines = rows
            .iter()
            .map(|row| match row.as_slice() {
                [a, b, c] => ProjLine::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?),
                _ => Err(Error::Parse(format!("a line needs three coefficients, got {}", row.len()))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines)
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn require_checkable(&self) -> Result<()> {
        if self.len() < 3 {
            return Err(Error::InvalidInput(format!("need at least three lines, got {}", self.len())));
        }
        Ok(())
    }

    /// `n` lines through `[0:0:1]`.
    pub fn pencil(n: usize) -> Self {
        let lines = (0..n as i64).map(|i| ProjLine::from_ints(1, -i, 0).unwrap()).collect();
        LineArrangement { lines }
    }

    /// `n - 1` lines through `[0:0:1]` and the line at infinity.
    pub fn near_pencil(n: usize) -> Self {
        let mut a = Self::pencil(n.saturating_sub(1));
        a.lines.push(ProjLine::from_ints(0, 0, 1).unwrap());
        a
    }

    /// Lines `(1, t, t^2)`, `t = 0..n`; no three are concurrent.
    pub fn generic(n: usize) -> Self {
        let lines = (0..n as i64).map(|t| ProjLine::from_ints(1, t, t * t).unwrap()).collect();
        LineArrangement { lines }
    }

    /// `n` distinct lines with integer coefficients in `[-bound, bound]`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Self {
        let mut lines: Vec<ProjLine> = Vec::with_capacity(n);
        while lines.len() < n {
            let mut draw = || rng.gen_range(-bound..=bound);
            if let Ok(l) = ProjLine::from_ints(draw(), draw(), draw()) {
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
        LineArrangement { lines }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    #[serde(serialize_with = "serialize_triple")]
    pub point: Triple,
    pub incident_lines: Vec<usize>,
    pub barmult: u32,
}

fn serialize_triple<S: serde::Serializer>(t: &Triple, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(format_rational))
}

/// Every intersection point, once, with all lines through it. Points are
/// ordered by their incident line sets.
pub fn intersection_lattice(a: &LineArrangement) -> Vec<LatticePoint> {
    let mut seen: BTreeMap<Triple, ()> = BTreeMap::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let p = canonical(cross(a.lines[i].coords(), a.lines[j].coords()))
                .expect("distinct lines meet in a point");
            seen.insert(p, ());
        }
    }
    let mut points: Vec<LatticePoint> = seen
        .into_keys()
        .map(|point| {
            let incident_lines: Vec<usize> =
                (0..a.len()).filter(|&k| a.lines[k].contains(&point)).collect();
            LatticePoint { barmult: incident_lines.len() as u32, point, incident_lines }
        })
        .collect();
    points.sort_by(|p, q| p.incident_lines.cmp(&q.incident_lines));
    points
}

fn restriction_from(lattice: &[LatticePoint], line: usize) -> Vec<u32> {
    let mut m: Vec<u32> = lattice
        .iter()
        .filter(|p| p.incident_lines.contains(&line))
        .map(|p| p.barmult - 1)
        .collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

/// Multiplicities `m̄(p) - 1` of the points on one line, decreasing. A single
/// entry is possible (a pencil), so the result is a plain vector.
pub fn restriction_multiplicities(a: &LineArrangement, line: usize) -> Result<Vec<u32>> {
    if line >= a.len() {
        return Err(Error::IndexOutOfRange { index: line, len: a.len() });
    }
    Ok(restriction_from(&intersection_lattice(a), line))
}

/// Classes 1 to 4 satisfied by one restriction.
pub fn classes_of(restriction: &[u32]) -> Vec<u8> {
    let points = restriction.len();
    let total: u32 = restriction.iter().sum();
    let mut out = Vec::new();
    if points <= 3 {
        out.push(1);
    }
    // multiplicity of a point in the plane: m̄ = m + 1 <= 3
    if restriction.iter().all(|&m| m <= 2) {
        out.push(2);
    }
    if let Some((&first, rest)) = restriction.split_first() {
        if first >= rest.iter().sum() {
            out.push(3);
        }
    }
    if points > 0 && total < 2 * points as u32 {
        out.push(4);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineReport {
    pub line: usize,
    pub restriction: Vec<u32>,
    pub classes: Vec<u8>,
}

pub fn check_classes(a: &LineArrangement) -> Result<Vec<LineReport>> {
    a.require_checkable()?;
    let lattice = intersection_lattice(a);
    Ok((0..a.len())
        .map(|line| {
            let restriction = restriction_from(&lattice, line);
            LineReport { line, classes: classes_of(&restriction), restriction }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop74Branch {
    /// Two lines meet away from every line through the witness.
    PencilDominant,
    /// Every intersection lies on a line through the witness.
    Covering,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop74Report {
    pub satisfied: bool,
    pub witness_point: Option<LatticePoint>,
    pub branch: Option<Prop74Branch>,
}

fn covers(lattice: &[LatticePoint], witness: &LatticePoint) -> bool {
    lattice
        .iter()
        .all(|q| q.incident_lines.iter().any(|l| witness.incident_lines.contains(l)))
}

/// Looks for `p` with `m̄(p) > (|A| - 3)/2`. Among such points a covering one
/// is preferred, then the largest `m̄(p)`.
pub fn check_prop74(a: &LineArrangement) -> Result<Prop74Report> {
    a.require_checkable()?;
    let lattice = intersection_lattice(a);
    let threshold = a.len() as i64 - 3;
    let mut best: Option<(bool, u32, usize)> = None;
    for (i, p) in lattice.iter().enumerate() {
        if 2 * p.barmult as i64 <= threshold {
            continue;
        }
        let key = (covers(&lattice, p), p.barmult);
        if best.map_or(true, |(c, m, _)| key > (c, m)) {
            best = Some((key.0, key.1, i));
        }
    }
    Ok(match best {
        None => Prop74Report { satisfied: false, witness_point: None, branch: None },
        Some((covering, _, i)) => Prop74Report {
            satisfied: true,
            witness_point: Some(lattice[i].clone()),
            branch: Some(if covering { Prop74Branch::Covering } else { Prop74Branch::PencilDominant }),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Class { class: u8, line: usize },
    Prop74 { barmult: u32, branch: Prop74Branch },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeraoStatus {
    pub guaranteed: bool,
    pub lines: usize,
    pub certificates: Vec<Certificate>,
}

pub fn terao_status(a: &LineArrangement) -> Result<TeraoStatus> {
    let mut certificates: Vec<Certificate> = check_classes(a)?
        .into_iter()
        .flat_map(|r| r.classes.into_iter().map(move |class| Certificate::Class { class, line: r.line }))
        .collect();
    let prop = check_prop74(a)?;
    if let (Some(p), Some(branch)) = (prop.witness_point, prop.branch) {
        certificates.push(Certificate::Prop74 { barmult: p.barmult, branch });
    }
    Ok(TeraoStatus { guaranteed: !certificates.is_empty(), lines: a.len(), certificates })
}

/// Whether lines off the witness's pencil meet only on pencil lines,
/// recomputed from the line equations.
pub fn pencil_complement_covered(a: &LineArrangement, witness: &LatticePoint) -> bool {
    let pencil: Vec<&ProjLine> = witness.incident_lines.iter().map(|&i| &a.lines[i]).collect();
    let rest: Vec<&ProjLine> =
        (0..a.len()).filter(|i| !witness.incident_lines.contains(i)).map(|i| &a.lines[i]).collect();
    rest.iter().enumerate().all(|(i, l)| {
        rest[i + 1..].iter().all(|k| {
            let q = cross(l.coords(), k.coords());
            pencil.iter().any(|p| p.contains(&q))
        })
    })
}

/// Lines as rational strings, the inverse of `LineArrangement::from_strings`.
pub fn to_strings(a: &LineArrangement) -> Vec<Vec<String>> {
    a.lines.iter().map(|l| l.coords.iter().map(format_rational).collect()).collect()
}
