use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("weight must be positive")]
    ZeroWeight,
    #[error("graded piece {degree} needs products of more than {cap} factors")]
    FactorCap { degree: u32, cap: u32 },
    #[error("{0} is not a common multiple of the generator weights")]
    NotCommonMultiple(u32),
    #[error("integral witness needs k >= 2, got {0}")]
    WitnessDegree(u32),
    #[error("invalid closure options: {0}")]
    InvalidOptions(String),
    #[error("invalid split h={h} for a ring of dimension {dim}")]
    InvalidSplit { h: usize, dim: usize },
    #[error("operation needs a ring of dimension {expected}, got {got}")]
    NeedsDimension { expected: usize, got: usize },
    #[error("operation needs positive characteristic")]
    NeedsPositiveCharacteristic,
    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridCap { points: u128, cap: u128 },
    #[error("invalid monomial curve: {0}")]
    InvalidCurve(String),
    #[error("pair carries no valid finiteness certificate: {0}")]
    Certificate(String),
}
