//! Graph families, exhaustive enumeration of small multigraphs, and the
//! edge-list text format.

mod enumerate;
mod io;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multigraph::{GraphError, Multigraph};

pub use enumerate::Enumeration;
pub use io::{parse_edge_list, read_edge_list, serialize, write_edge_list};

/// Canonical keys are only guaranteed to separate classes up to this size.
pub const MAX_ENUM_VERTICES: usize = 7;
pub const DEFAULT_ENUM_CAPS: (usize, usize, usize) = (5, 10, 3);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("invalid family: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Triangle with every pair of multiplicity `k`.
    ShannonTriangle {
        k: usize,
    },
    /// `n`-cycle with every pair of multiplicity `k`.
    MultiCycle {
        n: usize,
        k: usize,
    },
    Petersen,
    /// `count` graphs on `n` vertices; each pair is present with probability
    /// `edge_prob` and then gets a uniform multiplicity in `1..=max_mult`.
    Random {
        n: usize,
        max_mult: usize,
        edge_prob: f64,
        seed: u64,
        count: usize,
    },
    /// One graph per isomorphism class with at most `max_n` vertices, none
    /// isolated, between 1 and `max_edges` edges, multiplicities up to
    /// `max_mult`.
    Enumerate {
        max_n: usize,
        max_edges: usize,
        max_mult: usize,
    },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::InvalidSpec(m.to_string()));
        match *self {
            FamilySpec::ShannonTriangle { k: 0 } => bad("multiplicity must be at least 1"),
            FamilySpec::MultiCycle { n, .. } if n < 3 => bad("a cycle needs at least 3 vertices"),
            FamilySpec::MultiCycle { k: 0, .. } => bad("multiplicity must be at least 1"),
            FamilySpec::Random { n: 0, .. } => bad("random graphs need at least one vertex"),
            FamilySpec::Random { max_mult: 0, .. } => bad("max multiplicity must be at least 1"),
            FamilySpec::Random { edge_prob, .. } if !(0.0..=1.0).contains(&edge_prob) => {
                bad("edge probability must lie in [0, 1]")
            }
            FamilySpec::Enumerate { max_n, max_edges, max_mult } => {
                if max_n < 2 || max_edges == 0 || max_mult == 0 {
                    bad("enumeration bounds must be positive and allow an edge")
                } else if max_n > MAX_ENUM_VERTICES {
                    bad(&format!("enumeration is limited to {MAX_ENUM_VERTICES} vertices"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::ShannonTriangle { k } => write!(f, "shannon:{k}"),
            FamilySpec::MultiCycle { n, k } => write!(f, "cycle:{n}:{k}"),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Random { n, max_mult, edge_prob, seed, count } => {
                write!(f, "random:{n}:{max_mult}:{edge_prob}:{seed}:{count}")
            }
            FamilySpec::Enumerate { max_n, max_edges, max_mult } => write!(f, "enum:{max_n}:{max_edges}:{max_mult}"),
        }
    }
}

/// Parses `shannon:K`, `cycle:N:K`, `petersen`, `random:N:MULT:P:SEED[:COUNT]`
/// and `enum[:N:E:M]`.
impl FromStr for FamilySpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let invalid = || HarnessError::InvalidSpec(s.to_string());
        let num = |i: usize| parts.get(i).ok_or_else(invalid)?.parse::<usize>().map_err(|_| invalid());
        let spec = match (parts[0], parts.len()) {
            ("shannon", 2) => FamilySpec::ShannonTriangle { k: num(1)? },
            ("cycle", 3) => FamilySpec::MultiCycle { n: num(1)?, k: num(2)? },
            ("petersen", 1) => FamilySpec::Petersen,
            ("random", 5 | 6) => FamilySpec::Random {
                n: num(1)?,
                max_mult: num(2)?,
                edge_prob: parts[3].parse().map_err(|_| invalid())?,
                seed: parts[4].parse().map_err(|_| invalid())?,
                count: if parts.len() == 6 { num(5)? } else { 1 },
            },
            ("enum", 1) => {
                let (max_n, max_edges, max_mult) = DEFAULT_ENUM_CAPS;
                FamilySpec::Enumerate { max_n, max_edges, max_mult }
            }
            ("enum", 4) => FamilySpec::Enumerate { max_n: num(1)?, max_edges: num(2)?, max_mult: num(3)? },
            _ => return Err(invalid()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn shannon_triangle(k: usize) -> Multigraph {
    Multigraph::from_edge_list(&[(0, 1, k), (1, 2, k), (0, 2, k)]).expect("valid triangle")
}

pub fn multi_cycle(n: usize, k: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, k)).collect();
    Multigraph::from_edge_list(&pairs).expect("valid cycle")
}

/// Outer 5-cycle `0..5`, spokes `i - (i + 5)`, inner pentagram.
pub fn petersen() -> Multigraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::from_pairs(10, &pairs).expect("valid Petersen graph")
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_mult: usize, edge_prob: f64) -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                pairs.push((u, v, rng.gen_range(1..=max_mult)));
            }
        }
    }
    Multigraph::with_vertices(n, &pairs).expect("generated pairs are valid")
}

pub type GraphStream = Box<dyn Iterator<Item = Multigraph> + Send>;

/// The graphs of a family, in a deterministic order.
pub fn generate(spec: &FamilySpec) -> Result<GraphStream, HarnessError> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::ShannonTriangle { k } => Box::new(std::iter::once(shannon_triangle(k))),
        FamilySpec::MultiCycle { n, k } => Box::new(std::iter::once(multi_cycle(n, k))),
        FamilySpec::Petersen => Box::new(std::iter::once(petersen())),
        FamilySpec::Random { n, max_mult, edge_prob, seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |_| random_graph(&mut rng, n, max_mult, edge_prob)))
        }
        FamilySpec::Enumerate { max_n, max_edges, max_mult } => Box::new(Enumeration::new(max_n, max_edges, max_mult)),
    })
}
