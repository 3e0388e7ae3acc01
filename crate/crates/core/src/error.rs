use thiserror::Error;

/// Errors produced by distance computations, bounds, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid measure parameters: {0}")]
    InvalidParams(String),

    #[error("infeasible window: radius {radius} < length gap {gap} (no banded path exists)")]
    InfeasibleWindow { radius: usize, gap: usize },

    #[error("index {index} out of range for series of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("bound {bound} is not defined for measure {measure}")]
    UnsupportedBound { bound: String, measure: String },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("graph too large for the exact solver: {vertices} vertices (limit {limit})")]
    GraphTooLarge { vertices: usize, limit: usize },

    #[error("weight vector length mismatch: got {got}, expected {expected}")]
    WeightLengthMismatch { got: usize, expected: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{path}:{row}: {msg}")]
    Parse {
        path: String,
        row: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
