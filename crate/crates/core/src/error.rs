use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    InvalidModulus(u64),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("malformed scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: &'static str },

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("zero has no multiplicative inverse")]
    NotInvertible,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix shape mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("sequence is not a frame (rank {rank} < length {len})")]
    NotAFrame { rank: usize, len: usize },

    #[error("{0} is not contained in the required span")]
    NotInSpan(String),

    #[error("frame already spans the subspace; nothing to extend with")]
    AlreadyMaximal,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sequence of length {len} is not a basis of the {dim}-dimensional ambient space")]
    NotABasis { len: usize, dim: usize },

    #[error("brute-force enumeration needs a finite field")]
    InfiniteField,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal soundness check failed: {0}")]
    Soundness(String),

    #[error("{0}")]
    Format(String),
}
