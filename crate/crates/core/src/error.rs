use thiserror::Error;

/// Shape errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {left} vs {right} operator variables")]
    RingMismatch { left: usize, right: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("exponent has {found} entries but the ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("position {position} out of range for rank {rank}")]
    InvalidPosition { position: usize, rank: usize },
    #[error("position {0} listed twice")]
    DuplicatePosition(usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
