//! Semi-decision procedures for the domino problem over a blueprint.

pub mod driver;
pub mod empty;
pub mod error;
pub mod quotient;

pub use driver::{domino_run, domino_run_on_model, ModelVerdict, Schedule, Step, Verdict};
pub use empty::{certify_empty, certify_empty_on_model, verify_empty, EmptinessCertificate};
pub use error::{DominoError, Result};
pub use quotient::{bisimulation_classes, certify_nonempty, verify_quotient, walk, QuotientCertificate, QuotientSearch, SearchBounds, Walk};
