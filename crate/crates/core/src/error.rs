use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation {0}: must be a bijection of 1..n")]
    InvalidPermutation(String),

    #[error("permutations of different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what} = {value} out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("truncation order {available} too small: {what} needs at least {required}")]
    TruncationTooLow {
        what: String,
        required: u32,
        available: u32,
    },

    #[error("norm of Gram-Schmidt vector {index} vanishes identically")]
    ZeroNorm { index: usize },

    #[error("t-support must be nonempty")]
    EmptySupport,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
