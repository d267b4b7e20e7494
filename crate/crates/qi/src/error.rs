use blueprint_core::CoreError;
use blueprint_subshift::SubshiftError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QiError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error("alphabet has {count} letters, above the cap of {cap}")]
    AlphabetCap { count: u128, cap: u128 },
    #[error("pattern compilation exceeded {0} patterns")]
    PatternBudget(usize),
    #[error("word problem gave no answer for {0}")]
    WordProblem(String),
    #[error("walk left the window at {0}")]
    RadiusExhausted(String),
    #[error("action of {0} is undefined")]
    Undefined(String),
    #[error("no index is coded within distance N of the origin")]
    NoPreimage,
    #[error("quasi-isometry table has no entry for {0}")]
    TableGap(String),
    #[error("quasi-isometry table is not injective at {0}")]
    NotInjective(String),
    #[error("letter {0} is not in the alphabet")]
    BadLetter(String),
    #[error("condition {condition} fails at {word}")]
    Violation { condition: &'static str, word: String },
}

pub type Result<T> = std::result::Result<T, QiError>;
