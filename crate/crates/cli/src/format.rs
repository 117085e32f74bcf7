//! JSON file formats for spaces and labeled trees.
//!
//! Space: `{"points": [names], "dist": [["p/q", ...], ...]}`.
//! Labeled tree: `{"vertices": [names], "edges": [[i, j], ...],
//! "labels": ["p/q", ...], "center": optional index}`.
//! Rationals are written as quoted strings; on input a bare JSON integer is
//! accepted for `k/1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use ultrastar::{Error, LabeledStar, Rational, Space, Star, Tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self { location: location.into(), message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::at(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_rational(value: &Value, location: &str) -> Result<Rational, ParseError> {
    match value {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|e| ParseError::at(location, format!("invalid rational {s:?}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| ParseError::at(location, format!("{n} is not an integer; write fractions as \"p/q\""))),
        other => Err(ParseError::at(location, format!("expected a rational, found {other}"))),
    }
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    points: Vec<String>,
    dist: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct SpaceOut<'a> {
    points: &'a [String],
    dist: Vec<Vec<String>>,
}

/// A parsed space file whose matrix has the right shape but has not yet
/// been checked for the metric axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDoc {
    pub names: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
}

pub fn parse_space_doc(text: &str) -> Result<SpaceDoc, ParseError> {
    let raw: RawSpace = serde_json::from_str(text).map_err(json_error)?;
    let n = raw.points.len();
    if n == 0 {
        return Err(ParseError::at("points", "a space needs at least one point"));
    }
    check_unique(&raw.points, "points")?;
    if raw.dist.len() != n {
        return Err(ParseError::at("dist", format!("expected {n} rows, found {}", raw.dist.len())));
    }
    let mut matrix = Vec::with_capacity(n);
    for (i, row) in raw.dist.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::at(format!("dist[{i}]"), format!("expected {n} entries, found {}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, v)| parse_rational(v, &format!("dist[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        matrix.push(parsed);
    }
    Ok(SpaceDoc { names: raw.points, matrix })
}

fn check_unique(names: &[String], field: &str) -> Result<(), ParseError> {
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(ParseError::at(format!("{field}[{i}]"), format!("duplicate name {name:?}")));
        }
    }
    Ok(())
}

pub fn space_to_json(names: &[String], space: &Space) -> String {
    let dist = space.to_matrix().iter().map(|row| row.iter().map(rational_string).collect()).collect();
    serde_json::to_string_pretty(&SpaceOut { points: names, dist }).expect("serializable")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTree {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    labels: Vec<Value>,
    #[serde(default)]
    center: Option<usize>,
}

#[derive(Serialize)]
struct TreeOut<'a> {
    vertices: &'a [String],
    edges: Vec<[usize; 2]>,
    labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDoc {
    pub names: Vec<String>,
    pub tree: Tree,
    pub center: Option<usize>,
}

impl TreeDoc {
    /// The tree as a star, using the stored center if there is one.
    pub fn star(&self) -> Result<Star, Error> {
        LabeledStar::from_tree(&self.tree, self.center)
    }
}

pub fn parse_tree_doc(text: &str) -> Result<TreeDoc, ParseError> {
    let raw: RawTree = serde_json::from_str(text).map_err(json_error)?;
    let n = raw.vertices.len();
    check_unique(&raw.vertices, "vertices")?;
    if raw.labels.len() != n {
        return Err(ParseError::at("labels", format!("expected {n} labels, found {}", raw.labels.len())));
    }
    let labels = raw
        .labels
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rational(v, &format!("labels[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = raw.center {
        if c >= n {
            return Err(ParseError::at("center", format!("index {c} out of range for {n} vertices")));
        }
    }
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let tree = Tree::new(labels, edges).map_err(|e| ParseError::at(tree_location(&e), e.to_string()))?;
    Ok(TreeDoc { names: raw.vertices, tree, center: raw.center })
}

fn tree_location(e: &Error) -> &'static str {
    match e {
        Error::EmptyTree => "vertices",
        Error::NegativeValue { .. } => "labels",
        _ => "edges",
    }
}

pub fn tree_to_json(names: &[String], tree: &Tree, center: Option<usize>) -> String {
    let out = TreeOut {
        vertices: names,
        edges: tree.edges().iter().map(|&(u, v)| [u, v]).collect(),
        labels: tree.labels().iter().map(rational_string).collect(),
        center,
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}

pub fn star_to_json(names: &[String], star: &Star) -> String {
    tree_to_json(names, &star.to_tree(), Some(star.center()))
}

/// `x0, x1, ...` or the given prefix.
pub fn default_names(prefix: &str, n: usize, offset: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{}", i + offset)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        let doc = parse_space_doc(r#"{"points": ["a", "b"], "dist": [[0, "1/2"], ["2/4", "0"]]}"#).unwrap();
        assert_eq!(doc.matrix[0][1], Rational::new(1, 2));
        assert_eq!(doc.matrix[1][0], Rational::new(1, 2));
    }

    #[test]
    fn locates_errors() {
        let e = parse_space_doc(r#"{"points": ["a", "b"], "dist": [[0, "x"], [1, 0]]}"#).unwrap_err();
        assert_eq!(e.location, "dist[0][1]");
        let e = parse_space_doc(r#"{"points": ["a", "b"], "dist": [[0, 1], [1]]}"#).unwrap_err();
        assert_eq!(e.location, "dist[1]");
        let e = parse_space_doc("{\"points\": [\"a\"],\n \"dist\": [[0]]").unwrap_err();
        assert!(e.location.starts_with("line 2"));
        let e = parse_space_doc(r#"{"points": ["a", "a"], "dist": [[0, 1], [1, 0]]}"#).unwrap_err();
        assert_eq!(e.location, "points[1]");
        let e = parse_space_doc(r#"{"points": ["a"], "dist": [[1.5]]}"#).unwrap_err();
        assert_eq!(e.location, "dist[0][0]");
        let e = parse_tree_doc(r#"{"vertices": ["a", "b"], "edges": [], "labels": [1, 1]}"#).unwrap_err();
        assert_eq!(e.location, "edges");
        let e = parse_tree_doc(r#"{"vertices": ["a"], "edges": [], "labels": ["1/0"]}"#).unwrap_err();
        assert_eq!(e.location, "labels[0]");
    }

    #[test]
    fn star_round_trip() {
        let star = Star::new(1, vec![Rational::new(3, 2), Rational::from_integer(0), Rational::from_integer(2)]).unwrap();
        let names = default_names("v", 3, 0);
        let doc = parse_tree_doc(&star_to_json(&names, &star)).unwrap();
        assert_eq!(doc.names, names);
        assert_eq!(doc.star().unwrap(), star);
    }
}
