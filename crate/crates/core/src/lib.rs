//! Exact edge coloring of loopless multigraphs and an executable check of
//! clique-removal statements for their line graphs.
//!
//! * [`multigraph`]: the data model, degrees, multiplicities, triangles and
//!   canonical keys.
//! * [`linegraph`]: L(G), a brute-force clique oracle, and the stream of
//!   cliques of a given size built from star and triangle supports.
//! * [`chromatic`]: exact chromatic index with certificates, bounds,
//!   missing colors and Kempe chains.
//! * [`tihany`]: verification of the clique-removal property per `(s, t)`
//!   pair, threshold probing and resumable batch runs.
//! * [`proof_engine`]: constructive extension of a partial coloring through
//!   palette splits, Hall matchings and Kempe swaps.
//! * [`harness`]: graph families, isomorphism-free enumeration and the
//!   edge-list format.

pub mod chromatic;
pub mod harness;
pub mod linegraph;
pub mod multigraph;
pub mod proof_engine;
pub mod tihany;

pub use chromatic::{Color, EdgeColorSolver, EdgeColoring, Palette};
pub use multigraph::{Edge, EdgeId, GraphStats, Multigraph, Vertex};
