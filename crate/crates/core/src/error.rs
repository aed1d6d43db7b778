use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A closed form was requested outside the regime where it holds.
    #[error("closed form not applicable: {0}")]
    NotApplicable(String),

    #[error("eigensolver did not converge after {iterations} sweeps (residual off-diagonal {residual:e})")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("{0} is undefined for a zero denominator")]
    Undefined(&'static str),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
