use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate parameter value {0}")]
    DuplicateParameter(String),
    #[error("points are not in linearly general position: {0}")]
    DegeneratePosition(String),
    #[error("projective equivalence could not be decided: {0}")]
    Indeterminate(String),
    #[error("weights outside the hypersimplex: {0}")]
    OutOfHypersimplex(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid stable tree: {0}")]
    InvalidTree(String),
    #[error("section space has dimension {got}, expected {expected}")]
    SectionSpaceDimension { expected: usize, got: usize },
    #[error("auxiliary point collides with mark {0}")]
    PoleAtMark(usize),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("Gale dual is undefined: column {0} of the kernel basis is zero")]
    DegenerateDual(usize),
    #[error("constraints are not generic: {0}")]
    NonGenericConstraints(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{n} is not divisible by d+1 = {divisor}")]
    DivisibilityViolated { n: usize, divisor: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
