//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
///
/// The variants are coarse on purpose: callers (most importantly the CLI)
/// map them onto exit codes, and the message carries the detail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input. `line` is 1-based; 0 means "whole input".
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A documented precondition of an operation was violated by its input.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Inconsistent dimensions or parameters in a structured value.
    #[error("structural error: {0}")]
    Structural(String),

    /// A construction refused to run because one of its hypotheses fails.
    #[error("hypothesis not met: {0}")]
    Refused(String),

    /// The LP verdict and the brute-force oracle disagree.
    #[error("LP and oracle disagree: {0}")]
    Contradiction(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }

    pub(crate) fn contradiction(msg: impl Into<String>) -> Self {
        Error::Contradiction(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
