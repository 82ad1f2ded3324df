use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Malformed map text. Line and column are 1-based.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A structurally valid input that violates a domain invariant.
    Invariant(String),
    /// Value iteration did not reach the requested residual.
    NonConvergence { iterations: usize, residual: f64 },
    /// Invalid learner configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse {
                line,
                column,
                message,
            } => write!(f, "map parse error at line {line}, column {column}: {message}"),
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
            Error::NonConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "value iteration did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
