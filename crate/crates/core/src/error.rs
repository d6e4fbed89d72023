use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty sample")]
    EmptySample,

    #[error("sample too small: {len} observations, need at least {min}")]
    SampleTooSmall { len: usize, min: usize },

    /// The moment equation has no sign change on the search bracket.
    #[error("no root of the moment equation on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("degenerate sample: {0}")]
    DegenerateSample(&'static str),

    /// Every value in the combined sample is identical.
    #[error("zero variance in combined ranks")]
    ZeroVariance,

    #[error("detection failed: no candidate split produced a usable statistic")]
    DetectionFailed,

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("the gambini detector requires the number of looks")]
    MissingLooks,

    #[error("{path}: line {line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{path}: byte {offset}: {msg}")]
    BinaryParse { path: PathBuf, offset: usize, msg: String },

    #[error("{path}: row {row} has {found} values, expected {expected}")]
    RaggedRow { path: PathBuf, row: usize, found: usize, expected: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
