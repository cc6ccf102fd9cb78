//! Edge colorings: validation, exact chromatic index, classical bounds and
//! Kempe chains.

mod coloring;
mod kempe;
mod solver;

use thiserror::Error;

use crate::multigraph::GraphError;

pub use coloring::{missing_colors, validate, Color, EdgeColoring, Palette};
pub use kempe::{kempe_component, kempe_swap, KempeComponent, KempeShape};
pub use solver::{
    certified_lower_bound, chromatic_index, chromatic_index_at_most, lower_bound, multiplicity_upper, odd_set_bound,
    shannon_upper, EdgeColorSolver, DEFAULT_NODE_LIMIT, MAX_COLORS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("palette of {k} colors exceeds the supported maximum of {max}")]
    PaletteTooLarge { k: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("Kempe chain needs two distinct colors, got {0} twice")]
    SameColors(Color),
    #[error("edge set is not a Kempe component of the coloring")]
    NotAComponent,
    #[error("coloring is not proper")]
    Improper,
    #[error("coloring line {line}: {message}")]
    Format { line: usize, message: String },
}
