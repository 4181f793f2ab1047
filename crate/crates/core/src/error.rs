use thiserror::Error;

/// Errors raised by the numerical kernels and the modal/bound operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("symmetric eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("empty matrix")]
    Empty,

    #[error("left/right inner product {inner:e} is too small to fix the left eigenvector scale")]
    DegenerateScaling { inner: f64 },

    #[error("<x, v1> = {inner:e} must be strictly positive")]
    NonPositiveInnerProduct { inner: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("shift {alpha} coincides with eigenvalue {index} ({value})")]
    SingularShift {
        index: usize,
        value: f64,
        alpha: f64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("eigenvector pair duplicates existing column {column}")]
    DuplicatePair { column: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
