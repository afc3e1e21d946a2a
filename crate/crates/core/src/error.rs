use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration too large: rank {rank} exceeds the supported bound {bound}")]
    EnumerationTooLarge { rank: usize, bound: usize },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("{factor} weight {weight:?} is not dominant")]
    NotDominant { factor: String, weight: Vec<i64> },

    #[error("invalid rank parameter N = {0} (need N >= 3)")]
    InvalidN(usize),

    #[error("invalid root set: {0}")]
    InvalidRootSet(String),

    #[error("character is not Weyl-invariant")]
    NotInvariant,

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("lattice context mismatch")]
    ContextMismatch,

    #[error("orbit not in closure")]
    NotInClosure,

    #[error("malformed sequence: {0}")]
    MalformedSequence(String),

    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree bound exceeded: qmax = {qmax}, limit {limit} at rank {rank}")]
    DegreeGuard { qmax: usize, limit: usize, rank: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
