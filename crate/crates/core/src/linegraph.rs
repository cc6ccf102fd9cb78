//! Line graphs, an exhaustive clique oracle, and enumeration of the cliques
//! of a line graph through their star and triangle supports.

use itertools::{Combinations, Itertools};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multigraph::{EdgeId, Multigraph, Vertex};

/// Largest graph the brute-force clique oracle accepts.
pub const ORACLE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineGraphError {
    #[error("graph has {size} vertices, oracle cap is {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// Symmetric, irreflexive adjacency relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    adjacency: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, adjacency: vec![vec![false; vertex_count]; vertex_count] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "simple graphs have no loops");
        self.adjacency[a][b] = true;
        self.adjacency[b][a] = true;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency[a].iter().filter(|&&x| x).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count).map(|a| self.degree(a)).sum::<usize>() / 2
    }
}

/// L(G): vertex `i` stands for `g.edges()[i]`; two vertices are adjacent
/// when the edges share an endpoint (parallel edges share both).
pub fn build_line_graph(g: &Multigraph) -> SimpleGraph {
    let edges = g.edges();
    let mut h = SimpleGraph::new(edges.len());
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if edges[i].shares_endpoint(&edges[j]) {
                h.add_edge(i, j);
            }
        }
    }
    h
}

/// Exact clique number by exhaustive branch and bound over bitmasks.
pub fn max_clique_bruteforce(h: &SimpleGraph) -> Result<usize, LineGraphError> {
    let n = h.vertex_count();
    if n > ORACLE_CAP {
        return Err(LineGraphError::TooLarge { size: n, cap: ORACLE_CAP });
    }
    let nbr: Vec<u32> = (0..n).map(|a| (0..n).filter(|&b| h.adjacent(a, b)).fold(0u32, |m, b| m | (1 << b))).collect();

    fn expand(nbr: &[u32], size: usize, cand: u32, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        expand(nbr, size + 1, cand & nbr[v], best);
        expand(nbr, size, cand & !(1 << v), best);
    }

    let mut best = 0;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    expand(&nbr, 0, all, &mut best);
    Ok(best)
}

/// The two shapes a clique of L(G) can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportKind {
    Star { center: Vertex },
    Triangle { vertices: [Vertex; 3] },
}

/// A maximal clique shape: all of E(v), or all edges among a triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSupport {
    pub kind: SupportKind,
    /// Sorted ascending.
    pub edge_ids: Vec<EdgeId>,
}

impl CliqueSupport {
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    fn contains_all(&self, ids: &[EdgeId]) -> bool {
        ids.iter().all(|id| self.edge_ids.binary_search(id).is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub support: SupportKind,
    pub edge_ids: Vec<EdgeId>,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.edge_ids.len()
    }
}

/// Star supports first, by descending degree then vertex index, followed by
/// triangle supports in lexicographic order.
pub fn clique_supports(g: &Multigraph) -> Vec<CliqueSupport> {
    let mut centers: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| g.deg(v) > 0).collect();
    centers.sort_by_key(|&v| (std::cmp::Reverse(g.deg(v)), v));
    let mut out: Vec<CliqueSupport> = centers
        .into_iter()
        .map(|v| CliqueSupport { kind: SupportKind::Star { center: v }, edge_ids: g.edges_at(v) })
        .collect();
    for [a, b, c] in g.triangles() {
        let edge_ids =
            g.edges().iter().filter(|e| [a, b, c].contains(&e.u) && [a, b, c].contains(&e.v)).map(|e| e.id).collect();
        out.push(CliqueSupport { kind: SupportKind::Triangle { vertices: [a, b, c] }, edge_ids });
    }
    out
}

/// Lazy stream of every `s`-clique of L(G), each edge set exactly once.
///
/// A clique inside several supports is yielded from the first of them in
/// [`clique_supports`] order; within a support, subsets come out in
/// lexicographic edge-id order.
pub fn cliques_of_size(g: &Multigraph, s: usize) -> CliqueStream {
    let supports =
        if s == 0 { Vec::new() } else { clique_supports(g).into_iter().filter(|sup| sup.len() >= s).collect() };
    CliqueStream { supports, s, current: 0, combos: None }
}

pub struct CliqueStream {
    supports: Vec<CliqueSupport>,
    s: usize,
    current: usize,
    combos: Option<Combinations<std::vec::IntoIter<EdgeId>>>,
}

impl Iterator for CliqueStream {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        loop {
            if self.current >= self.supports.len() {
                return None;
            }
            let combos = self
                .combos
                .get_or_insert_with(|| self.supports[self.current].edge_ids.clone().into_iter().combinations(self.s));
            match combos.next() {
                Some(ids) => {
                    let earlier = &self.supports[..self.current];
                    if earlier.iter().any(|sup| sup.contains_all(&ids)) {
                        continue;
                    }
                    return Some(Clique { support: self.supports[self.current].kind, edge_ids: ids });
                }
                None => {
                    self.current += 1;
                    self.combos = None;
                }
            }
        }
    }
}
