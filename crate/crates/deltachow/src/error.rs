//! Crate-wide error type.

use thiserror::Error;

/// Which configured resource cap was exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Degree,
    Terms,
}

impl std::fmt::Display for LimitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitKind::Degree => write!(f, "degree"),
            LimitKind::Terms => write!(f, "term count"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("resource limit exceeded: {kind} reached {reached}, cap is {cap}")]
    ResourceLimit {
        kind: LimitKind,
        cap: u64,
        reached: u64,
    },

    #[error("empty variety: the ideal is the unit ideal")]
    EmptyVariety,

    #[error("improper ideal: contains a nonzero constant")]
    ImproperIdeal,

    #[error("constant polynomial has no leader")]
    ConstantPolynomial,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elimination ideal is not principal: reduced basis has {generators} generators")]
    NotPrincipal { generators: usize },

    #[error("order too small: need at least {needed}, got {got}")]
    OrderTooSmall { needed: u32, got: u32 },

    #[error("chain is not in prolongation-admissible shape at variable class {variable}")]
    NotAdmissibleShape { variable: String },

    #[error("cycle is not order-unmixed: {0}")]
    NotOrderUnmixed(String),

    #[error("blocks are not equi-degree: {0}")]
    BlocksNotEquiDegree(String),

    #[error("degree bound exceeded: component degree {degree} is above the bound {bound}")]
    DegreeBoundExceeded { degree: u64, bound: String },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
