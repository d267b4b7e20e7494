//! Patterns, windows of Γ-subshifts, sliding-block codes and nearest-neighbour conversion.

pub mod code;
pub mod error;
pub mod nn;
pub mod pattern;
pub mod period;
pub mod window;

pub use code::{apply_sliding_block, Cell, LocalRule, SlidingBlockCode};
pub use error::{Result, SubshiftError};
pub use nn::{to_nearest_neighbor, to_nearest_neighbor_with, NnConversion};
pub use pattern::{forbid_all_edges, hard_square, Letter, Pattern, PatternSet};
pub use period::find_period_witness;
pub use window::{
    count_windows, for_each_window, for_each_window_on, locally_admissible, restrict_window, shift_window,
    validate_window, Window, WindowStream,
};
