use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    /// The requested computation exceeds a cost limit.
    #[error("{what}: got {got}, limit is {limit}")]
    Guard { what: &'static str, got: usize, limit: usize },

    #[error("distribution sums to {sum}, expected 1 within {tolerance:e}")]
    Normalization { sum: f64, tolerance: f64 },

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
