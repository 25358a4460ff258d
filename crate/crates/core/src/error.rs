use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {left} points/axis (length {left_length}) vs {right} points/axis (length {right_length})")]
    GridMismatch {
        left: usize,
        left_length: f64,
        right: usize,
        right_length: f64,
    },

    #[error("sample buffer has {got} entries, grid needs {expected}")]
    BufferLength { expected: usize, got: usize },

    #[error("block index {index} out of range 0..={j_max}")]
    BlockIndex { index: usize, j_max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("blow-up at t = {t}: {norm} reached {value:e}")]
    BlowUp { t: f64, norm: &'static str, value: f64 },

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("missing norms in trajectory record: {0}")]
    MissingNorms(String),

    #[error("snapshot format: {0}")]
    Snapshot(String),

    #[error("config {path}:{line}: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
