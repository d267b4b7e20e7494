//! Exact rational punctured tilings, their patch blueprints and the translation of domino
//! problems between blueprints and colored tilings.

pub mod error;
pub mod lemmas;
pub mod patch;
pub mod patchbp;
pub mod pretiling;
pub mod rat;
pub mod shape;
pub mod tiling;
pub mod tileset;

pub use error::{GeomError, Result};
pub use lemmas::{interpolate_path, visibility_path};
pub use patch::{enumerate_patches, PatchBudget};
pub use patchbp::{
    build_patch_blueprint, check_distortion, homeomorphism_guaranteed, psi_forward, psi_forward_on, psi_inverse, realize, BuildBudget,
    DistortionReport, PatchBlueprint, PatchWordProblem,
};
pub use pretiling::{
    codings_to_text, count_region_colorings, forced_constraints, point, tiling_to_window, translate_domino_to_pretilings,
    window_to_tiling, CodingFamily, PositionGroup, PretilingCoding, Region, ZVec,
};
pub use rat::{parse_q, parse_vector, q, Vector, Q};
pub use shape::{Location, Shape};
pub use tiling::{Patch, PartialTiling, Placed};
pub use tileset::{ab_squares, keyed_square, load_tileset, PuncturedTileSet, Tile};
