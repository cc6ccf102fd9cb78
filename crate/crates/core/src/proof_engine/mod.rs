//! Constructive extension of a coloring of `G - S_v` to an
//! `(s + t - 2)`-coloring of `G`: pivot choice, round-robin edge selection,
//! palette splits, a Hall-matching repair, and Kempe-swap fallbacks.
//!
//! The engine is best effort. A `Failed` outcome says nothing about `χ'`;
//! an `Extended` outcome is always a validated coloring.

mod extension;
mod helper;
mod selection;
mod split;

use thiserror::Error;

use crate::chromatic::ChromaticError;
use crate::multigraph::GraphError;

pub use extension::{attempt_extension, EngineOptions, ExtensionOutcome, ExtensionResult, TraceStep};
pub use helper::{
    apply_matching_repair, available_pair_colors, build_helper, hall_matching, HallOutcome, HelperBipartite,
};
pub use selection::{choose_pivot, select_s_v, PivotSelection};
pub use split::{split_palette, PaletteSplit, SplitStrategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("graph has no edges")]
    Edgeless,
    #[error("cannot select {s} edges at a vertex of degree {degree}")]
    SelectionTooLarge { s: usize, degree: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] ChromaticError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{strategy} split infeasible: {reason}")]
    Infeasible { strategy: SplitStrategy, reason: String },
    #[error("only {have} colors missing at the pivot, need {need}")]
    TooFewMissing { have: usize, need: usize },
    #[error("matching does not cover every blocked edge")]
    NotSaturating,
    #[error("matching repair produced an improper coloring")]
    RepairImproper,
}
