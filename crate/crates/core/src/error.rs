use thiserror::Error;

use crate::bounds::Magnitude;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-domain arguments.
    #[error("invalid input: {0}")]
    Input(String),

    /// Exact evaluation would exceed the configured bit budget.
    #[error("value too large for exact evaluation (about {magnitude}), budget {budget_bits} bits")]
    Overflow {
        magnitude: Magnitude,
        budget_bits: u64,
    },

    /// An enumeration or search ran out of its work budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
