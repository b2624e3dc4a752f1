use thiserror::Error;

/// Errors surfaced by every module of the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("invalid field configuration: {0}")]
    InvalidConfig(String),
    #[error("exponent denominator would exceed p^{dencap}: {what}")]
    DencapOverflow { dencap: u32, what: String },
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("indeterminate at current precision: {0}")]
    Indeterminate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("unbounded polytope: {0}")]
    Unbounded(String),
}

impl Error {
    /// Stable machine-readable tag used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConfigMismatch(_) => "config_mismatch",
            Error::InvalidConfig(_) => "invalid_config",
            Error::DencapOverflow { .. } => "dencap_overflow",
            Error::Precision(_) => "precision",
            Error::Indeterminate(_) => "indeterminate",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
            Error::NoConvergence(_) => "no_convergence",
            Error::BudgetExhausted(_) => "budget_exhausted",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidFan(_) => "invalid_fan",
            Error::Unbounded(_) => "unbounded",
        }
    }

    pub(crate) fn dencap(dencap: u32, what: impl Into<String>) -> Self {
        Error::DencapOverflow { dencap, what: what.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
