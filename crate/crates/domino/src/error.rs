use blueprint_core::CoreError;
use blueprint_subshift::SubshiftError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DominoError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error("nonemptiness search needs nearest-neighbour patterns")]
    NotNearestNeighbor,
    #[error("certificate document: {0}")]
    Parse(String),
    #[error("certificate was issued for another {0}")]
    DigestMismatch(&'static str),
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error("re-verification needs {0} colorings, above the verifier cap")]
    VerifierCap(u128),
}

pub type Result<T> = std::result::Result<T, DominoError>;
