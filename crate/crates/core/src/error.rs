use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A metric axiom that fails on a concrete tuple of points.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum MetricViolation {
    NonZeroSelfDistance { point: String, value: f64 },
    Negative { a: String, b: String, value: f64 },
    ZeroBetweenDistinct { a: String, b: String },
    Asymmetric { a: String, b: String, ab: f64, ba: f64 },
    Triangle { a: String, b: String, c: String },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonZeroSelfDistance { point, value } => {
                write!(f, "d({point},{point}) = {value} is not zero")
            }
            MetricViolation::Negative { a, b, value } => write!(f, "d({a},{b}) = {value} < 0"),
            MetricViolation::ZeroBetweenDistinct { a, b } => {
                write!(f, "d({a},{b}) = 0 for distinct points")
            }
            MetricViolation::Asymmetric { a, b, ab, ba } => {
                write!(f, "symmetry: d({a},{b}) = {ab} but d({b},{a}) = {ba}")
            }
            MetricViolation::Triangle { a, b, c } => {
                write!(f, "triangle inequality: d({a},{c}) > d({a},{b}) + d({b},{c})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("no points")]
    NoPoints,
    #[error("distance table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("duplicate point id `{0}`")]
    DuplicateId(String),
    #[error("metric axiom violated: {0}")]
    Metric(MetricViolation),
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
    #[error("index {index} out of range for {len} elements")]
    OutOfRange { index: usize, len: usize },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("cover is over {cover} points but the space has {space}")]
    CoverMismatch { cover: usize, space: usize },
    #[error("map is partial: {got} images for {expected} source points")]
    PartialMap { expected: usize, got: usize },
    #[error("maps do not share source and target")]
    MismatchedMaps,
    #[error("scale must be finite; use the explicit unbounded constructor for t = inf")]
    InfiniteScale,
    #[error("scales must be strictly ascending")]
    NonAscendingScales,
    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("map is not simplicial: image of {simplex:?} is not a simplex")]
    NotSimplicial { simplex: Vec<String> },
    #[error("cover {level} does not star-refine cover {next}: star of member `{member}` lies in no member")]
    NotStarRefinement { level: usize, next: usize, member: String },
    #[error("budget of {0} work units exceeded")]
    BudgetExceeded(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
