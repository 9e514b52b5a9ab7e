use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("basis vector {0} does not lie in the ambient sublattice")]
    ContainmentViolation(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("d = {d} fails {rule}")]
    InvalidTarget { d: i64, rule: String },
}

pub type Result<T> = std::result::Result<T, Error>;
