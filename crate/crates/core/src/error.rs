use thiserror::Error;

use crate::instance::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("initial basis columns do not form an identity matrix")]
    SingularBasis,

    #[error("malformed linear program: {0}")]
    InvalidLp(String),

    #[error("simplex did not terminate within {0} pivots")]
    PivotLimit(usize),

    #[error("dimension {dim} exceeds the double description cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("the cone is the whole space; its complement is empty")]
    WholeSpace,

    #[error("nonnegative least squares exceeded {0} iterations")]
    NnlsMaxIter(usize),

    #[error("the preference cone is not pointed")]
    NotPointed,

    #[error("epsilon search exhausted {max_iter} trials (last epsilon {last_epsilon:e})")]
    MaxIterExceeded { max_iter: usize, last_epsilon: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("plotting needs p = 2, got p = {0}")]
    UnsupportedDimension(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::InvalidInstance(_) => "INVALID_INSTANCE",
            Error::SingularBasis => "SINGULAR_BASIS",
            Error::InvalidLp(_) => "INVALID_LP",
            Error::PivotLimit(_) => "PIVOT_LIMIT",
            Error::DimensionTooLarge { .. } => "DIMENSION_TOO_LARGE",
            Error::WholeSpace => "WHOLE_SPACE",
            Error::NnlsMaxIter(_) => "NNLS_MAX_ITER",
            Error::NotPointed => "NOT_POINTED",
            Error::MaxIterExceeded { .. } => "MAX_ITER_EXCEEDED",
            Error::InvalidConfig(_) => "INVALID_CONFIG",
            Error::UnsupportedDimension(_) => "UNSUPPORTED_DIMENSION",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
