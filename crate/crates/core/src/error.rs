use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("blueprint document: {0}")]
    Parse(String),
    #[error("blueprint has no states")]
    NoStates,
    #[error("blueprint has no generators")]
    NoGenerators,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has an empty terminal set")]
    EmptyTerminal(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator name `{0}` must be nonempty and contain no whitespace")]
    BadGeneratorName(String),
    #[error("relation {index} uses a word that is not consistent")]
    InconsistentRelation { index: usize },
    #[error("relation {index} has sides with different initial states")]
    RelationInitialMismatch { index: usize },
    #[error("word `{0}` is not consistent")]
    InconsistentWord(String),
    #[error("domain is not prefix closed: missing prefix of `{0}`")]
    NotPrefixClosed(String),
    #[error("word `{0}` is not in the domain")]
    OutsideDomain(String),
    #[error("action by `{0}` is undefined: word not supported")]
    UndefinedAction(String),
    #[error("closure budget exceeded: more than {0} consistent words")]
    ClosureBudget(usize),
    #[error("model violation at `{word}`: {reason}")]
    ModelViolation { word: String, reason: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
