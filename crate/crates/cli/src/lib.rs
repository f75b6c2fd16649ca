//! Command-line front end for `qtriple`: argument parsing, command bodies
//! and the JSON / CSV formats they exchange.

pub mod commands;
pub mod formats;

use std::fmt;

/// Failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, model specs, expressions or input files (exit 2).
    Usage(String),
    /// A computed object broke a numerical invariant (exit 3).
    Numerical(String),
    /// Anything else, mostly I/O (exit 1).
    Other(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical invariant violated: {m}"),
            CliError::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qtriple::Error> for CliError {
    fn from(e: qtriple::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<qtriple::ri::RiError> for CliError {
    fn from(e: qtriple::ri::RiError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        // Input files that fail core validation are usage errors too.
        match e.downcast::<qtriple::Error>() {
            Ok(core) => core.into(),
            Err(e) => CliError::Other(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.into())
    }
}
