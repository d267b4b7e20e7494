//! Blueprints, their consistent words, bounded Γ-equivalence, partial models and model graphs.

pub mod blueprint;
pub mod builtins;
pub mod equiv;
pub mod error;
pub mod graph;
pub mod model;
pub mod word;

pub use blueprint::{Blueprint, Generator};
pub use equiv::{
    equivalence_query, verify_chain, BoundedClosure, Budget, ClassKey, EquivalenceVerdict, Separation,
    WordProblem,
};
pub use error::{CoreError, Result};
pub use graph::{model_graph, ModelGraph};
pub use model::{
    enumerate_partial_models, partial_shift, validate_model, ClassIndex, Domain, PartialModel, Step,
};
pub use word::{shortlex, Gen, State, Word};
