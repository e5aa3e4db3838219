use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} is {actual}, above the oracle limit of {limit}")]
    OracleLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn check_limit(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::OracleLimit {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
