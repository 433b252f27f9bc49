use thiserror::Error;

/// Everything that can go wrong while computing flag invariants and coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed scalar backends: {0} and {1}")]
    MixedBackends(&'static str, &'static str),

    #[error("log of non-positive value")]
    LogOfNonPositive,

    #[error("cannot parse scalar {0:?}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate flags")]
    DegenerateFlags,

    #[error("p out of range: p = {p}, n = {n}")]
    IndexOutOfRange { p: i64, n: usize },

    #[error("invalid index triple ({p},{q},{r}) for n = {n}")]
    InvalidTriple { p: i64, q: i64, r: i64, n: usize },

    #[error("invalid dimension n = {0}")]
    InvalidDimension(usize),

    #[error("invalid boundary lengths: {0}")]
    InvalidLengths(String),

    #[error("invalid pants parameters: {0}")]
    InvalidParams(String),

    #[error("not hyperbolic")]
    NotHyperbolic,

    #[error("fixed points are not representable in the exact backend")]
    IrrationalFixedPoints,

    #[error("positivity violation")]
    PositivityViolation,

    #[error("missing coordinate entry {0}")]
    MissingEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
