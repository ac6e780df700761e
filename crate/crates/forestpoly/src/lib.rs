//! File formats, parallel drivers and the command line for `forestpoly-core`.

pub mod cli;
pub mod formats;
pub mod parallel;

/// Errors from reading input or rendering output.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] forestpoly_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Format(String),
    /// Flags that parse but do not fit together.
    #[error("{0}")]
    Usage(String),
}
