use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{modes} modes exceed the mode limit {limit}")]
    ModeLimit { modes: usize, limit: usize },
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("odd-length reflection word; use sigma composition")]
    OddWord,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("operators do not commute: {0}")]
    NonCommuting(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
