//! Plain-text point-set and partition files.
//!
//! Point sets:
//!
//! ```text
//! # construction d=1 r=3 parts=2,2,1 colors=3
//! 1 5
//! -1 # A i=1
//! -2 # A i=2
//! 0 # A i=3
//! 1 # A_j j=1 k=1
//! 2 # A_j j=1 k=2
//! ```
//!
//! The header line is `d n`, followed by `n` rows of `d` rationals (`p/q` or an
//! integer). Lines starting with `#` are comments; the `# construction` comment
//! carries the construction parameters and, when present, ` multiset` and
//! ` epsilon=EPS seed=S`. A row may end with a label trailer.
//!
//! Partitions: one per line, blocks of comma-separated indices joined by `|`.

use std::fmt::Write as _;

use thiserror::Error;
use tverberg_core::construction::{Construction, Perturbation};
use tverberg_core::rational::parse_rational;
use tverberg_core::{ConstructionSpec, Label, Partition, Point, PointSet};

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_point_set(x: &PointSet) -> String {
    let mut out = String::new();
    if let Some(c) = x.construction() {
        let spec = &c.spec;
        write!(
            out,
            "# construction d={} r={} parts={} colors={}",
            spec.d(),
            spec.r(),
            join(spec.parts()),
            join(spec.colors())
        )
        .unwrap();
        if c.multiset {
            out.push_str(" multiset");
        }
        if let Some(p) = &c.perturbation {
            write!(out, " epsilon={} seed={}", p.epsilon, p.seed).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "{} {}", x.dim(), x.len()).unwrap();
    for (p, label) in x.points().iter().zip(x.labels()) {
        let coords: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
        out.push_str(&coords.join(" "));
        if let Some(l) = label {
            write!(out, " # {l}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_usize(line: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| err(line, format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_list(line: usize, s: &str) -> Result<Vec<usize>, ParseError> {
    s.split(',').map(|t| parse_usize(line, t.trim())).collect()
}

fn parse_construction(line: usize, text: &str) -> Result<Construction, ParseError> {
    let (mut d, mut r, mut parts, mut colors) = (None, None, None, None);
    let (mut multiset, mut epsilon, mut seed) = (false, None, None);
    for token in text.split_whitespace() {
        match token.split_once('=') {
            Some(("d", v)) => d = Some(parse_usize(line, v)?),
            Some(("r", v)) => r = Some(parse_usize(line, v)?),
            Some(("parts", v)) => parts = Some(parse_list(line, v)?),
            Some(("colors", v)) => colors = Some(parse_list(line, v)?),
            Some(("epsilon", v)) => epsilon = Some(parse_rational(v).map_err(|e| err(line, e.to_string()))?),
            Some(("seed", v)) => seed = Some(v.parse::<u64>().map_err(|_| err(line, format!("bad seed {v:?}")))?),
            None if token == "multiset" => multiset = true,
            _ => return Err(err(line, format!("unknown construction field {token:?}"))),
        }
    }
    let missing = |name: &str| err(line, format!("construction line lacks `{name}`"));
    let (d, r, parts) = (d.ok_or_else(|| missing("d"))?, r.ok_or_else(|| missing("r"))?, parts.ok_or_else(|| missing("parts"))?);
    let spec = match colors {
        Some(c) => ConstructionSpec::with_color_map(d, r, parts, c),
        None => ConstructionSpec::new(d, r, parts),
    }
    .map_err(|v| err(line, v.to_string()))?;
    let perturbation = match (epsilon, seed) {
        (Some(epsilon), Some(seed)) => Some(Perturbation { epsilon, seed }),
        (None, None) => None,
        _ => return Err(err(line, "epsilon and seed must appear together")),
    };
    Ok(Construction { spec, multiset, perturbation })
}

fn parse_label(line: usize, text: &str) -> Result<Label, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let field = |t: &str, key: &str| -> Result<usize, ParseError> {
        match t.split_once('=') {
            Some((k, v)) if k == key => parse_usize(line, v),
            _ => Err(err(line, format!("expected `{key}=...` in label, got {t:?}"))),
        }
    };
    match tokens.as_slice() {
        ["A", i] => Ok(Label::A { i: field(i, "i")? }),
        ["A_j", j, k] => Ok(Label::Axis { j: field(j, "j")?, k: field(k, "k")? }),
        _ => Err(err(line, format!("unrecognized label {text:?}"))),
    }
}

/// Recovers `(d, r, parts, i(j))` from labels and the zero pattern of the
/// `x^i`, for labeled files without a construction line.
fn infer_construction(dim: usize, points: &[Point], labels: &[Option<Label>]) -> Option<Construction> {
    let a: Vec<(usize, &Point)> = labels
        .iter()
        .zip(points)
        .filter_map(|(l, p)| match l {
            Some(Label::A { i }) => Some((*i, p)),
            _ => None,
        })
        .collect();
    let r = a.len();
    let colors: Option<Vec<usize>> = (0..dim)
        .map(|j| {
            let zeros: Vec<usize> = a.iter().filter(|(_, p)| num_traits::Zero::is_zero(&p[j])).map(|(i, _)| *i).collect();
            (zeros.len() == 1).then(|| zeros[0])
        })
        .collect();
    let colors = colors?;
    let parts: Vec<usize> = (1..=r)
        .map(|i| (dim + 1).checked_sub(colors.iter().filter(|&&c| c == i).count()))
        .collect::<Option<_>>()?;
    let spec = ConstructionSpec::with_color_map(dim, r, parts, colors).ok()?;
    Some(Construction { spec, multiset: false, perturbation: None })
}

pub fn parse_point_set(text: &str) -> Result<PointSet, ParseError> {
    let mut construction = None;
    let mut header: Option<(usize, usize)> = None;
    let mut points = Vec::new();
    let mut labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(rest) = comment.trim_start().strip_prefix("construction") {
                construction = Some(parse_construction(line, rest)?);
            }
            continue;
        }
        let (data, trailer) = match trimmed.split_once('#') {
            Some((d, t)) => (d.trim(), Some(t.trim())),
            None => (trimmed, None),
        };
        let Some((dim, n)) = header else {
            let fields: Vec<&str> = data.split_whitespace().collect();
            let [d, n] = fields.as_slice() else {
                return Err(err(line, "expected header `d n`"));
            };
            header = Some((parse_usize(line, d)?, parse_usize(line, n)?));
            continue;
        };
        if points.len() == n {
            return Err(err(line, format!("more than the declared {n} points")));
        }
        let coords = data
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|e| err(line, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != dim {
            return Err(err(line, format!("expected {dim} coordinates, got {}", coords.len())));
        }
        points.push(Point::new(coords));
        labels.push(match trailer {
            Some(t) if !t.is_empty() => Some(parse_label(line, t)?),
            _ => None,
        });
    }

    let (dim, n) = header.ok_or_else(|| err(0, "missing header `d n`"))?;
    if points.len() != n {
        return Err(err(0, format!("declared {n} points, found {}", points.len())));
    }
    if construction.is_none() && !labels.is_empty() && labels.iter().all(Option::is_some) {
        construction = infer_construction(dim, &points, &labels);
    }
    PointSet::with_labels(dim, points, labels, construction).map_err(|e| err(0, e.to_string()))
}

pub fn write_partitions<'a>(partitions: impl IntoIterator<Item = &'a Partition>) -> String {
    let mut out = String::new();
    for p in partitions {
        writeln!(out, "{p}").unwrap();
    }
    out
}

/// Parses a partition file, checking every partition covers exactly `0..n`.
pub fn parse_partitions(text: &str, n: usize) -> Result<Vec<Partition>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let p: Partition = l.parse().map_err(|e: tverberg_core::Error| err(i + 1, e.to_string()))?;
            p.check_covers(n).map_err(|e| err(i + 1, e.to_string()))?;
            Ok(p)
        })
        .collect()
}
