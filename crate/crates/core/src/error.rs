use thiserror::Error;

/// Errors raised by the numerical routines and trackers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsError {
    /// An argument fell outside the domain of a function.
    #[error("{func}: argument {value} outside domain {domain}")]
    Domain {
        func: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A sample was not a finite real in [0, 1].
    #[error("sample {0} is not in [0, 1]")]
    InvalidSample(f64),

    /// Confidence level must lie strictly inside (0, 1).
    #[error("delta {0} must lie in (0, 1)")]
    InvalidDelta(f64),

    #[error("mixture weight {0} must lie in (0, 1]")]
    InvalidWeight(f64),

    /// Adaptive quadrature hit its subdivision budget before meeting the tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error {error} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("invalid counts: k = {k}, n = {n}")]
    InvalidCounts { k: u64, n: u64 },

    #[error("{0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl CsError {
    /// Whether the error comes from a numerical routine rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, CsError::Domain { .. } | CsError::Quadrature { .. })
    }
}

impl From<std::io::Error> for CsError {
    fn from(e: std::io::Error) -> Self {
        CsError::Io(e.to_string())
    }
}

impl From<csv::Error> for CsError {
    fn from(e: csv::Error) -> Self {
        CsError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CsError>;

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(CsError::InvalidDelta(delta))
    }
}

pub(crate) fn check_sample(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(CsError::InvalidSample(x))
    }
}
