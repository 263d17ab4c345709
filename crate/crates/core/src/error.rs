use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rule table line {line}: {message}")]
    RuleTable { line: usize, message: String },

    #[error("morpheme rule line {line}: {message}")]
    MorphRule { line: usize, message: String },

    #[error("analysis sidecar header: {0}")]
    SidecarHeader(String),

    #[error("vocabulary: {0}")]
    Vocab(String),

    #[error("fertility is undefined for an empty corpus")]
    EmptyCorpus,

    #[error("cannot draw {train} train + {valid} valid records from {available}")]
    InfeasibleSplit {
        train: usize,
        valid: usize,
        available: usize,
    },

    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
