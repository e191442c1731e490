use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid Orlicz family: {0}")]
    InvalidFamily(String),

    #[error("Orlicz function overflow at coefficient index {index}")]
    Range { index: i64 },

    #[error("support of size {size} exceeds the limit {limit}")]
    UnsupportedSize { size: usize, limit: usize },

    #[error("phi vanishes on every grid point used by the constraint for k = {k}")]
    DegeneratePhi { k: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("phi does not satisfy the inverse-theorem hypothesis: {0}")]
    InvalidPhi(String),

    #[error("spectrum gap {gap} at index {index} exceeds C = {bound}")]
    SpectrumGapTooLarge { index: usize, gap: f64, bound: f64 },

    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("invalid majorant: {0}")]
    InvalidMajorant(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
