use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty interval: lo = {lo} exceeds hi = {hi}")]
    EmptyInterval { lo: u64, hi: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no successful records to summarize")]
    EmptyStatistics,

    #[error("every pair has a = b; the difference set is empty")]
    NoValidPair,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
