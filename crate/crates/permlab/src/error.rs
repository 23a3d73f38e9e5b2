use thiserror::Error;

/// Errors produced by permutation construction and the lab operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid circular permutation: {0}")]
    InvalidCircular(String),

    #[error("shift h={h} out of range for n={n} (need 1 <= h < n)")]
    ShiftOutOfRange { h: usize, n: usize },

    #[error("insertion label {k} out of range 1..={max}")]
    InsertionOutOfRange { k: usize, max: usize },

    #[error("label {k} cannot be peeled: {reason}")]
    NotPeelable { k: usize, reason: String },

    #[error("expected a permutation consisting of a single cycle")]
    NotSingleCycle,

    #[error("n={n} exceeds the exhaustive cap of {cap}")]
    ExceedsCap { n: usize, cap: usize },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
