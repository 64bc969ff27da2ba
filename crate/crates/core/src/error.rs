use thiserror::Error;

use crate::lie::AlgebraId;

/// Errors raised by the library. Every variant names the violated precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank {rank} is below the minimum {min} for family {family}")]
    RankBelowBound { family: char, rank: usize, min: usize },

    #[error("weight has {got} Dynkin labels but {algebra} has rank {expected}")]
    DimensionMismatch { algebra: AlgebraId, expected: usize, got: usize },

    #[error("weight {weight} has level {weight_level}, above the level {level}")]
    LevelExceeded { weight: String, weight_level: u64, level: u64 },

    #[error("level must be positive")]
    ZeroLevel,

    #[error("tuple is empty; at least one marked point is required")]
    EmptyTuple,

    #[error("{what}: expected {expected} marked points, got {got}")]
    SizeMismatch { what: &'static str, expected: usize, got: usize },

    #[error("M_{{0,n}} needs n >= 4, got n = {0}")]
    TooFewPoints(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("cannot parse weight {input:?}: {reason}")]
    WeightSyntax { input: String, reason: String },

    #[error("cannot parse rational {0:?}")]
    RationalSyntax(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("explicit construction does not apply: {0}; use the LP search instead")]
    ConstructionInapplicable(String),

    #[error("n = {n} exceeds the LP size cap {cap}")]
    LpCapExceeded { n: usize, cap: usize },

    #[error("weight system of dimension {dim} exceeds the guard {limit}")]
    WeightSystemTooLarge { dim: u128, limit: u128 },

    #[error("verlinde oracle failure: residual {residual} above tolerance")]
    OracleResidual { residual: f64 },

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
