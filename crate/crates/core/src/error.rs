use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("level must be at least 2, got {0}")]
    InvalidLevel(usize),
    #[error("modulus e must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("row {row} out of range 1..={ell}")]
    RowOutOfRange { row: usize, ell: usize },
    #[error("count must be at least 1, got {0}")]
    CountOutOfRange(usize),
    #[error("residue {i} out of range 0..{e}")]
    ResidueOutOfRange { i: i64, e: i64 },
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("malformed abacus window: {0}")]
    MalformedWindow(String),
    #[error("invalid z vector: {0}")]
    InvalidZ(String),
    #[error("rank cap {cap} is below the starting rank {rank}")]
    CapBelowRank { cap: usize, rank: usize },
    #[error("operation requires level {expected}, got {found}")]
    WrongLevel { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CrystalError>;
