use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while building or evaluating matrices, states and weights.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("not Hermitian: max deviation {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("not positive definite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1 within {tolerance:e}")]
    TraceNotUnit { trace: f64, tolerance: f64 },

    #[error("negative eigenvalue {0:e} in matrix function argument")]
    NegativeEigenvalue(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid probability simplex: {0}")]
    InvalidSimplex(String),

    #[error("not a projector: {0}")]
    NotProjector(String),

    #[error("channel undefined: vanishing overlap (trace {0:e})")]
    VanishingOverlap(f64),

    #[error("non-negligible imaginary part {0:e} in a trace that must be real")]
    ImaginaryTrace(f64),

    #[error("reduced weighted state has off-support residual {0:e}")]
    OffSupportResidual(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse grouping used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Dimension,
    ChannelUndefined,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch { .. } | Error::InvalidDimension(_) => ErrorKind::Dimension,
            Error::VanishingOverlap(_) => ErrorKind::ChannelUndefined,
            _ => ErrorKind::Validation,
        }
    }
}
