use thiserror::Error;

/// Errors raised by the exact eigen engine.
///
/// Matrix-valued payloads are rendered as text so the error stays independent
/// of the scalar type it was produced from.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("spectrum leaves the Gaussian rationals (unresolved factor of degree {residual_degree}); supply the spectrum explicitly")]
    IrrationalSpectrum { residual_degree: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("target eigenvalue {0} is not in the spectrum")]
    TargetNotInSpectrum(String),

    #[error("{0} is not an eigenvalue of the matrix")]
    NotInSpectrum(String),

    #[error("matrix is not diagonalizable; nonzero product of distinct characteristic matrices:\n{witness}")]
    NotDiagonalizable { witness: String },

    #[error("matrix does not have the claimed two-point spectrum")]
    WrongSpectrum,

    #[error("repeated eigenvalue {eigenvalue} has a single eigenvector direction {direction}")]
    Defective { eigenvalue: String, direction: String },

    #[error("combined characteristic matrix needs at most two distinct eigenvalues, got {0}")]
    SpectrumTooLarge(usize),

    #[error("all rows of the characteristic matrix are parallel; the eigenspace is not one-dimensional")]
    AllRowsParallel,

    #[error("zero vector is not an eigenvector")]
    ZeroVector,

    #[error("generalized eigenvector rank {requested} exceeds the index {index}")]
    RankTooLarge { requested: usize, index: usize },

    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),

    #[error("could not draw an invertible basis after {0} attempts")]
    GenerationFailed(usize),

    #[error("real-form solutions requested for a matrix with nonreal entries")]
    RealifyOnComplexMatrix,
}

pub type Result<T> = std::result::Result<T, EigenError>;
