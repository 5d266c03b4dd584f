use thiserror::Error;

use crate::poly::Polynomial;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("coordinate index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Exact division failed; `remainder` is the reduced dividend at the point of failure.
    #[error("not divisible (remainder witness has {} terms)", .remainder.num_terms())]
    NotDivisible { remainder: Box<Polynomial> },
    #[error("expected a nonzero homogeneous linear form")]
    NotLinear,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("solution is not unique: kernel dimension {0}")]
    NonUnique(usize),
    #[error("unsupported Coxeter type {0}")]
    Unsupported(String),
    #[error("group order exceeds bound {0}")]
    OrderBoundExceeded(usize),
    #[error("could not select basic invariants with nonvanishing Jacobian: {0}")]
    JacobianDegenerate(String),
    #[error("result is not polynomial")]
    NotPolynomial,
    #[error("derivation is not invariant under the group")]
    NotInvariant,
    #[error("derivation is not homogeneous")]
    NotHomogeneous,
    #[error("candidate is not a basis: {0}")]
    NotABasis(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("invalid multiplicity: {0}")]
    Multiplicity(String),
    #[error("time budget exhausted during {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
