use blueprint_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubshiftError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("pattern document: {0}")]
    Parse(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("pattern {0} has an empty support")]
    EmptyPattern(usize),
    #[error("pattern {index} assigns two values to one word")]
    ConflictingCells { index: usize },
    #[error("pattern support of length {len} does not fit in radius {radius}")]
    PatternTooLarge { len: usize, radius: usize },
    #[error("window radius {have} is too small, need {need}")]
    InsufficientRadius { have: usize, need: usize },
    #[error("local rule is undefined at `{0}`")]
    RuleUndefined(String),
    #[error("window violates {condition} at `{word}`")]
    Violation { condition: &'static str, word: String },
    #[error("enumeration cap of {0} exceeded")]
    Cap(usize),
}

pub type Result<T> = std::result::Result<T, SubshiftError>;
