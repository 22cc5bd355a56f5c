use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a point lies outside the domain of a map, or why an evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainError {
    /// `x ≤ 0` for a map with a `1/√x` term.
    NonPositive,
    /// `|ln x| < 1e-300`, i.e. `x = 1` in double precision.
    LogSingularity,
    /// The result is not a finite real.
    Overflow,
}

impl DomainError {
    pub fn name(self) -> &'static str {
        match self {
            DomainError::NonPositive => "NonPositive",
            DomainError::LogSingularity => "LogSingularity",
            DomainError::Overflow => "Overflow",
        }
    }
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::error::Error for DomainError {}

impl std::str::FromStr for DomainError {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "NonPositive" => Ok(DomainError::NonPositive),
            "LogSingularity" => Ok(DomainError::LogSingularity),
            "Overflow" => Ok(DomainError::Overflow),
            other => Err(Error::InvalidInput(format!(
                "unknown domain error `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signed power of zero with negative exponent {0}")]
    PoleAtZero(f64),

    #[error("domain error: {0}")]
    Domain(#[from] DomainError),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: f64,
        cap: f64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
