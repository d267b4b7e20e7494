use blueprint_core::CoreError;
use blueprint_domino::DominoError;
use blueprint_geom::GeomError;
use blueprint_qi::QiError;
use blueprint_subshift::SubshiftError;
use thiserror::Error;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;
pub const EXIT_UNREADABLE: i32 = 66;
pub const EXIT_BUDGET: i32 = 70;
pub const EXIT_VERIFY: i32 = 71;
pub const EXIT_CHECK: i32 = 72;
pub const EXIT_OUTPUT: i32 = 73;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {reason}")]
    Unreadable { path: String, reason: String },
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
    #[error("certificate failed re-verification: {0}")]
    Verify(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Domino(#[from] DominoError),
    #[error(transparent)]
    Qi(#[from] QiError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::ClosureBudget(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn subshift_code(e: &SubshiftError) -> i32 {
    match e {
        SubshiftError::Core(c) => core_code(c),
        SubshiftError::Cap(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unreadable { .. } => EXIT_UNREADABLE,
            CliError::Output { .. } => EXIT_OUTPUT,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::Check(_) => EXIT_CHECK,
            CliError::Core(e) => core_code(e),
            CliError::Subshift(e) => subshift_code(e),
            CliError::Domino(e) => match e {
                DominoError::Core(c) => core_code(c),
                DominoError::Subshift(s) => subshift_code(s),
                DominoError::VerifierCap(_) => EXIT_BUDGET,
                DominoError::DigestMismatch(_) | DominoError::Rejected(_) => EXIT_VERIFY,
                _ => EXIT_INPUT,
            },
            CliError::Qi(e) => match e {
                QiError::Core(c) => core_code(c),
                QiError::Subshift(s) => subshift_code(s),
                QiError::AlphabetCap { .. } | QiError::PatternBudget(_) => EXIT_BUDGET,
                QiError::Violation { .. } => EXIT_CHECK,
                _ => EXIT_INPUT,
            },
            CliError::Geom(e) => match e {
                GeomError::Core(c) => core_code(c),
                GeomError::Subshift(s) => subshift_code(s),
                GeomError::FlcBudget { .. } | GeomError::RelationBudget(_) => EXIT_BUDGET,
                GeomError::Bound(_) | GeomError::OverlapWords(_, _) => EXIT_CHECK,
                _ => EXIT_INPUT,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
