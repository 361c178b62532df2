use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index set size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} is {requested}, above the cap of {cap}")]
    CapExceeded { what: &'static str, requested: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
