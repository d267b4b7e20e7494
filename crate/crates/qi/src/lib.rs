//! Transfer of subshifts along bounded-to-one quasi-isometries between blueprints.

pub mod action;
pub mod alphabet;
pub mod check;
pub mod compile;
pub mod error;
pub mod map;

pub use action::{QiState, QiView};
pub use alphabet::{Component, QiAlphabet, QiLetter};
pub use check::{check_qi_window, density_words, CheckReport};
pub use compile::{compile_qi_patterns, t_bound, CompileBudget, CompiledQi, Reachability};
pub use error::{QiError, Result};
pub use map::{check_map, encode_along_qi, QiMap};
