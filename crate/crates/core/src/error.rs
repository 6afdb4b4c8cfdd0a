use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Each variant carries a stable machine-readable [`Error::code`] that the CLI
/// and the C ABI forward unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("nonzero constant term in component {component} of the inner map")]
    NonzeroConstantTerm { component: usize },
    #[error("linear term is not the identity matrix; use general inversion")]
    NonIdentityLinearTerm,
    #[error("linear term is singular, the map has no compositional inverse")]
    NotInvertible,
    #[error("missing weight for vertex type {ty} with outdegree {outdegree}")]
    MissingWeight { ty: usize, outdegree: String },
    #[error("resource limit exceeded: {what} is {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonzeroConstantTerm { .. } => "nonzero-constant-term",
            Error::NonIdentityLinearTerm => "non-identity-linear-term",
            Error::NotInvertible => "not-invertible",
            Error::MissingWeight { .. } => "missing-weight",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Parse(_) => "parse-error",
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
