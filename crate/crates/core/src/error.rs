use thiserror::Error;

use crate::words::Letter;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A nonzero letter whose eigenvalue along the velocity vector vanishes.
    #[error("resonance: letter {letter} has nu^v = {re:+e}{im:+e}i (|.| <= {threshold:e})")]
    Resonance {
        letter: Letter,
        re: f64,
        im: f64,
        threshold: f64,
    },
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("table is not in the Lie algebra of infinitesimal characters: {0}")]
    NotInLieAlgebra(String),
    #[error("unknown letter {0}")]
    UnknownLetter(Letter),
    #[error("word of length {0} exceeds the supported maximum {1}")]
    WordTooLong(usize, usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
