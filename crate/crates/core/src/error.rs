use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("{0} must be prime")]
    NotPrime(u64),

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("set is not Sidon")]
    NotSidon,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("grid too small: need at least {required}, got {got}")]
    GridTooSmall { required: u64, got: u64 },

    #[error("{0} must be non-empty")]
    Empty(&'static str),

    #[error("integer overflow while counting; rerun with smaller inputs or a wider backend")]
    Overflow,

    #[error(
        "counting backends disagree: convolution gave {convolution}, brute force {bruteforce}"
    )]
    BackendMismatch { convolution: i128, bruteforce: u64 },

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid function samples: {0}")]
    InvalidFunction(String),

    #[error("cache entry {path} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
