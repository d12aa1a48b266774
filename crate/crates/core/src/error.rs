//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole.
    #[error("pole at {0}")]
    Pole(String),

    /// A witness search exhausted its range. Carries the best candidate
    /// index and the ratio of its value to the required bound.
    #[error("witness not found in [{lo}, {hi}]; best index {best_index} reached {best_ratio:.6e} of the bound")]
    WitnessNotFound {
        lo: u64,
        hi: u64,
        best_index: u64,
        best_ratio: f64,
    },

    /// A derived constant failed to clear its published value, or a
    /// numerical certificate could not be established.
    #[error("certification failed: {0}")]
    Certification(String),

    /// Zero data is missing or incomplete for the requested computation.
    #[error("missing dependency: {0}")]
    Dependency(String),

    /// Zero scanning found a count mismatch that refinement did not resolve.
    #[error("unverified window for {label} up to height {height}: found {found} zeros on the line, argument principle counts {expected}")]
    UnverifiedWindow {
        label: String,
        height: f64,
        found: u64,
        expected: u64,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
