use thiserror::Error;

use crate::metric::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a space needs at least one point")]
    EmptySpace,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) is not zero")]
    NonzeroDiagonal { i: usize },
    #[error("not an ultrametric: {}", describe_violations(.0))]
    NotUltrametric(Vec<Violation>),
    #[error("value at position {index} is negative")]
    NegativeValue { index: usize },
    #[error("point {index} duplicates an earlier point")]
    DuplicatePoint { index: usize },
    #[error("shift collapses distinct points (shift must be below the least nonzero distance)")]
    ShiftCollapses,
    #[error("subset is empty")]
    EmptySubset,
    #[error("index {index} is out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {index} occurs more than once")]
    DuplicateIndex { index: usize },
    #[error("a tree needs at least one vertex")]
    EmptyTree,
    #[error("tree on {vertices} vertices needs {expected} edges, found {found}")]
    EdgeCount { vertices: usize, expected: usize, found: usize },
    #[error("edge ({0}, {0}) is a loop")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("tree is not a star with center {center}")]
    NotAStar { center: usize },
    #[error("labeling is degenerate on edge ({0}, {1}): both endpoints are labeled 0")]
    DegenerateLabeling(usize, usize),
    #[error("point {point} is not a hub")]
    NotAHub { point: usize },
    #[error("space is not generated by any labeled star graph")]
    NotUs,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("star does not generate the space")]
    NotGenerating,
    #[error("center label must be 0")]
    NonzeroCenterLabel,
    #[error("operation needs at least {needed} points, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("element set is not a permutation group of degree {degree}")]
    NotAGroup { degree: usize },
    #[error("image list is not a bijection of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("{n} points exceeds the configured bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("heights must be positive and strictly increasing in level")]
    NonMonotoneHeights,
    #[error("invalid dendrogram: {0}")]
    InvalidDendrogram(&'static str),
    #[error("invalid rank matrix: {0}")]
    InvalidRankMatrix(&'static str),
    #[error("sequence is empty")]
    EmptySequence,
}

fn describe_violations(violations: &[Violation]) -> String {
    match violations.first() {
        None => "no violations".to_string(),
        Some(first) if violations.len() == 1 => first.to_string(),
        Some(first) => format!("{first} (and {} more)", violations.len() - 1),
    }
}
