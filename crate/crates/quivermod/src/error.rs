//! Error types shared by the engine modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quiver contains an oriented cycle")]
    CyclicQuiver,

    #[error("zero dimension vector")]
    ZeroDimVector,

    #[error("division by zero rational function")]
    DivisionByZero,

    #[error("rational function is not a polynomial: ({num})/({den})")]
    NonPolynomial { num: String, den: String },

    #[error("dimension vector is not coprime: gcd({theta}, {dim}) = {gcd}")]
    NotCoprime { theta: i64, dim: i64, gcd: i64 },

    #[error("tuple weights differ: {left} vs {right}")]
    WeightMismatch { left: String, right: String },

    #[error("cut position {pos} out of range 1..={max}")]
    CutOutOfRange { pos: usize, max: usize },

    #[error("tuple does not lie strictly above its baseline segment")]
    TupleBelowBaseline,

    #[error("tuple enumeration budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
