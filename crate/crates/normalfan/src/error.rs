use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("linear system is infeasible")]
    Infeasible,

    #[error("faces are not comparable: {0}")]
    NotComparable(String),

    #[error("polyhedron is not a cone")]
    NotACone,

    #[error("covering identity violated at {point}: {matches} faces match")]
    CoverViolation { point: String, matches: usize },

    #[error("theorem violated at {point}: phi = {got}, predicted {predicted}")]
    TheoremViolation {
        point: String,
        got: i64,
        predicted: i64,
    },

    #[error("point is not in the given stratum: {0}")]
    StratumMismatch(String),

    #[error("instance generation gave up after {0} attempts")]
    ResampleLimit(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
