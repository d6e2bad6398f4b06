use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("generator set mismatch")]
    GeneratorMismatch,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("degree cap {cap} does not close: {detail}")]
    CapTooSmall { cap: usize, detail: String },
    #[error("truncation order {trunc} too small: {detail}")]
    TruncationTooSmall { trunc: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
