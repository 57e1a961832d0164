use std::path::PathBuf;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size out of range: {0}")]
    Size(String),

    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("reference tap {index} is flagged as near-singular; pick the next unflagged index")]
    FlaggedReference { index: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
