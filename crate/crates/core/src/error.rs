use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("factor {factor}: type {kind} does not exist in rank {rank}")]
    InvalidFactor { factor: usize, kind: char, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight is not in the root span")]
    NotInRootSpan,
    #[error("zero vector has no primitive multiple")]
    ZeroVector,
    #[error("vector is not in the rational span of the lattice")]
    NotInLatticeSpan,
    #[error("cone is not pointed; split off its lineality space first")]
    NotPointed,
    #[error("generator {index} is not dominant for simple root {root}")]
    NotDominant { index: usize, root: usize },
    #[error("weight is not in the monoid")]
    NotInMonoid,
    #[error("{what} {size} exceeds the supported bound {max}")]
    TooLarge { what: &'static str, size: usize, max: usize },
    #[error("invalid spherical roots: {0}")]
    InvalidSphericalRoots(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
