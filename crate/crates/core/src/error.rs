//! Error type shared by all modules of the crate.

use std::path::PathBuf;

/// Errors produced by data ingestion, fitting, and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// File could not be read or written.
    #[error("i/o error on '{path}': {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input file; `row` is the 1-based data row.
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    /// Data violates a structural requirement (dimensions, coverage, scale).
    #[error("invalid data: {0}")]
    Validation(String),

    /// Caller-supplied parameter is out of range or inconsistent.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A cluster lost all usable members.
    #[error("cluster {cluster} has no usable members")]
    EmptyCluster { cluster: usize },

    /// No feature has positive between-cluster dissimilarity, so the
    /// weight objective has no direction to maximize.
    #[error("degenerate weight objective: no feature has positive between-cluster dissimilarity")]
    DegenerateWeights,

    /// A metric is undefined for the given inputs.
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
