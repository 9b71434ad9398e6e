use thiserror::Error;

/// Errors raised by the core library.
///
/// Variants fall into four classes that front ends map to distinct exit
/// codes: input errors, resource caps, internal consistency failures
/// (an oracle disagreed with a closed form) and parse errors (a kind of
/// input error).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not log Fano: r = n + 1 - sum x_j d_j = {0} is not positive")]
    NotLogFano(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("resource cap exceeded: {what} count {count} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch(_)
            | Error::InvalidInput(_)
            | Error::NotLogFano(_)
            | Error::Hypothesis(_)
            | Error::Parse(_) => ErrorKind::Input,
            Error::CapExceeded { .. } => ErrorKind::Resource,
            Error::Inconsistent(_) => ErrorKind::Consistency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Consistency,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
