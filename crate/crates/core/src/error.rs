use thiserror::Error;

/// Errors produced by the engines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    NotUnimodular {
        a: String,
        b: String,
        c: String,
        d: String,
        det: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sequence of length {0} is too short, at least 3 entries are required")]
    TooShort(usize),

    #[error("entry {value} at position {position} is not a positive integer")]
    NonPositiveEntry { position: usize, value: i64 },

    #[error("not a quiddity sequence: {0}")]
    NotQuiddity(String),

    #[error("cannot contract at position {position}: {reason}")]
    ContractionImpossible { position: usize, reason: String },

    #[error("frieze generation failed at row {row}, column {column}: {reason}")]
    FriezeCell {
        row: usize,
        column: usize,
        reason: String,
    },

    #[error("not a positive tiling: {0}")]
    NotPositiveTiling(String),

    #[error("inconsistent factors at ({i},{j}): {reason}")]
    InconsistentFactors { i: i64, j: i64, reason: String },

    #[error("missing {kind} factor for index {index}")]
    MissingFactor { kind: &'static str, index: i64 },

    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),

    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("{0:?} is not a basic sequence (1, A1, ..., An) with n >= 1 and every Ai >= 2")]
    NotBasic(Vec<u64>),

    #[error("{0:?} is not super-basic (basic, n > 1, A1 > 2 and An > 2)")]
    NotSuperBasic(Vec<u64>),

    #[error("composition accepts at most one degenerate part, got {0}")]
    TooManyDegenerate(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
