use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error(transparent)]
    Core(#[from] blueprint_core::CoreError),
    #[error(transparent)]
    Subshift(#[from] blueprint_subshift::SubshiftError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tile {0}: origin is not an interior point")]
    Puncture(String),
    #[error("tiles {0} and {1} coincide up to translation")]
    DuplicateTile(String, String),
    #[error("tile {0} is not a simple polygon")]
    NotSimple(String),
    #[error("tile {0}: {1}")]
    BadTile(String, String),
    #[error("operation needs 2-dimensional polygon tiles")]
    Unsupported,
    #[error("patch search exceeded the {what} cap of {cap}")]
    FlcBudget { what: &'static str, cap: usize },
    #[error("relation enumeration exceeded the cap of {0}")]
    RelationBudget(usize),
    #[error("tiles {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("words {0} and {1} give overlapping tiles")]
    OverlapWords(String, String),
    #[error("tiling does not cover the patch around {0}")]
    InsufficientSupport(String),
    #[error("x and y coincide")]
    SamePoint,
    #[error("no tile contains {0}")]
    LeavesSupport(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("path bound violated: {0}")]
    Bound(String),
    #[error("position {0} is not in the span of the position group")]
    NoPreimage(String),
    #[error("pattern {0} is not nearest-neighbor")]
    NotNearestNeighbor(usize),
}

pub type Result<T> = std::result::Result<T, GeomError>;
