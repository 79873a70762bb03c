use thiserror::Error;

use crate::scalar::Cyclotomic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Typed domain failures. Every variant has a stable machine-readable
/// [`Error::kind`] used by the CLI error object.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalue not found: {0}")]
    EigenvalueNotFound(String),
    #[error("matrix is not invertible over K[t,t^-1] (determinant {0})")]
    NotInvertibleOverA(String),
    #[error("{0} is not a unit of K[t,t^-1]")]
    NotAUnit(String),
    #[error("modules carry different derivations ({0} vs {1})")]
    MixedDerivations(String, String),
    #[error("a rank one sigma-module needs a nonzero eigenvalue")]
    ZeroEigenvalue,
    #[error("no constant form found within bounds: {0}")]
    NotFoundWithinBounds(String),
    #[error("exponent candidates must be supplied: {0}")]
    MissingCandidates(String),
    #[error("exponent {0} is not rational")]
    NonRationalExponent(String),
    #[error("module is not regular within bounds: {0}")]
    NotRegularWithinBounds(String),
    #[error("log obstruction: constant term {0}")]
    Obstruction(Cyclotomic),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotRootOfUnity(_) => "NotRootOfUnity",
            Error::NonSquare { .. } => "NonSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::EigenvalueNotFound(_) => "EigenvalueNotFound",
            Error::NotInvertibleOverA(_) => "NotInvertibleOverA",
            Error::NotAUnit(_) => "NotAUnit",
            Error::MixedDerivations(..) => "MixedDerivations",
            Error::ZeroEigenvalue => "ZeroEigenvalue",
            Error::NotFoundWithinBounds(_) => "NotFoundWithinBounds",
            Error::MissingCandidates(_) => "MissingCandidates",
            Error::NonRationalExponent(_) => "NonRationalExponent",
            Error::NotRegularWithinBounds(_) => "NotRegularWithinBounds",
            Error::Obstruction(_) => "Obstruction",
            Error::Invalid(_) => "Invalid",
        }
    }
}
