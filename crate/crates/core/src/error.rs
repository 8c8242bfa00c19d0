use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlError {
    /// Malformed input: dimension mismatch, bad index, unparsable value.
    #[error("input error: {0}")]
    Input(String),

    #[error("weight error: weight p_{index} = {value} must be a positive integer")]
    Weight { index: usize, value: i64 },

    /// The hyperplanes are not in general position.
    #[error("invalid type: {0}")]
    InvalidType(String),

    #[error("index subset {0:?} is not a stratum (empty intersection)")]
    NotAStratum(Vec<usize>),

    /// Fewer hyperplanes than d+1: arrow paths cannot span the degree-c maps.
    #[error(
        "arrow-insufficient: n = {n} <= d = {d}, degree-c maps are not spanned by arrow paths"
    )]
    ArrowInsufficient { n: usize, d: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
}

pub type Result<T> = std::result::Result<T, GlError>;
