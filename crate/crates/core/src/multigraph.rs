//! Loopless undirected multigraphs with stable edge identities.

mod canon;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("multiplicity of pair {u}-{v} must be at least 1")]
    ZeroMultiplicity { u: Vertex, v: Vertex },
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: Vertex, count: usize },
    #[error("multiplicity requested for equal endpoints {0}")]
    SameEndpoints(Vertex),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
}

/// One edge of a multigraph. Endpoints are stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

/// Summary invariants: maximum degree, heaviest triangle and their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub max_degree: usize,
    pub tau: usize,
    pub omega_prime: usize,
    pub edge_count: usize,
}

/// A loopless multigraph. Immutable once built; edits return new values.
///
/// Edges are kept sorted by id and ids survive removal of other edges, so a
/// set of edge ids means the same thing in a graph and in any of its
/// edge-deleted subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    mult: Vec<usize>,
    deg: Vec<usize>,
}

impl Multigraph {
    /// Builds a graph from explicit edges. Ids must be unique.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for e in edges {
            if e.u == e.v {
                return Err(GraphError::Loop(e.u));
            }
            for x in [e.u, e.v] {
                if x >= vertex_count {
                    return Err(GraphError::InvalidVertex { vertex: x, count: vertex_count });
                }
            }
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            list.push(Edge { id: e.id, u, v });
        }
        list.sort_unstable_by_key(|e| e.id);
        if let Some(w) = list.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateEdge(w[0].id));
        }
        let mut mult = vec![0; vertex_count * vertex_count];
        let mut deg = vec![0; vertex_count];
        for e in &list {
            mult[e.u * vertex_count + e.v] += 1;
            mult[e.v * vertex_count + e.u] += 1;
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        Ok(Self { vertex_count, edges: list, mult, deg })
    }

    /// Builds a graph from `(u, v, multiplicity)` triples on exactly
    /// `vertex_count` vertices. Edge ids are assigned densely in input order.
    /// A pair listed twice accumulates multiplicity.
    pub fn with_vertices(vertex_count: usize, pairs: &[(Vertex, Vertex, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for &(u, v, m) in pairs {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if m == 0 {
                return Err(GraphError::ZeroMultiplicity { u, v });
            }
            for _ in 0..m {
                edges.push(Edge { id: edges.len(), u, v });
            }
        }
        Self::new(vertex_count, edges)
    }

    /// Like [`Multigraph::with_vertices`] with the vertex count inferred as
    /// one more than the largest vertex mentioned.
    pub fn from_edge_list(pairs: &[(Vertex, Vertex, usize)]) -> Result<Self, GraphError> {
        let n = pairs.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
        Self::with_vertices(n, pairs)
    }

    /// Simple-graph convenience: every listed pair gets multiplicity one.
    pub fn from_pairs(vertex_count: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let triples: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::with_vertices(vertex_count, &triples)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| &self.edges[i])
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, count: self.vertex_count })
        }
    }

    /// Number of edges at `v`, counting parallel edges separately.
    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.deg[v])
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        if u == v {
            return Err(GraphError::SameEndpoints(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.mu(u, v))
    }

    /// Unchecked multiplicity lookup. Panics on out-of-range vertices.
    #[inline]
    pub(crate) fn mu(&self, u: Vertex, v: Vertex) -> usize {
        self.mult[u * self.vertex_count + v]
    }

    #[inline]
    pub(crate) fn deg(&self, v: Vertex) -> usize {
        self.deg[v]
    }

    /// Vertices joined to `v` by at least one edge, ascending.
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check_vertex(v)?;
        Ok(self.nbrs(v).collect())
    }

    pub(crate) fn nbrs(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count).filter(move |&u| self.mu(v, u) > 0)
    }

    /// Ids of the edges incident with `v`.
    pub fn edges_at(&self, v: Vertex) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.touches(v)).map(|e| e.id).collect()
    }

    /// Ids of the parallel edges joining `u` and `v`.
    pub fn edges_between(&self, u: Vertex, v: Vertex) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.touches(u) && e.touches(v) && u != v).map(|e| e.id).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Deletes exactly the given edges. Remaining ids and the vertex set are
    /// unchanged.
    pub fn remove_edges(&self, ids: &[EdgeId]) -> Result<Multigraph, GraphError> {
        let drop: BTreeSet<EdgeId> = ids.iter().copied().collect();
        for &id in &drop {
            if self.edge(id).is_none() {
                return Err(GraphError::UnknownEdge(id));
            }
        }
        Multigraph::new(self.vertex_count, self.edges.iter().filter(|e| !drop.contains(&e.id)).copied())
    }

    /// Keeps only the given edges (unknown ids are ignored).
    pub fn restrict_to(&self, ids: &BTreeSet<EdgeId>) -> Multigraph {
        Multigraph::new(self.vertex_count, self.edges.iter().filter(|e| ids.contains(&e.id)).copied())
            .expect("subgraph of a valid graph is valid")
    }

    /// All vertex triples that are pairwise adjacent, each once, ascending.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let n = self.vertex_count;
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.mu(a, b) == 0 {
                    continue;
                }
                for c in (b + 1)..n {
                    if self.mu(a, c) > 0 && self.mu(b, c) > 0 {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Largest number of edges spanned by a triangle, 0 if there is none.
    pub fn tau(&self) -> usize {
        self.triangles().iter().map(|&[a, b, c]| self.mu(a, b) + self.mu(b, c) + self.mu(a, c)).max().unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = self.max_degree();
        let tau = self.tau();
        GraphStats { max_degree, tau, omega_prime: max_degree.max(tau), edge_count: self.edge_count() }
    }

    /// Vertex sets of connected components that contain at least one edge.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.deg[start] == 0 {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.nbrs(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `(u, v, m(uv))` for every adjacent pair, ordered by the smallest edge
    /// id of the pair. For graphs built by [`Multigraph::with_vertices`] with
    /// each pair listed once this reproduces the input order.
    pub fn pair_list(&self) -> Vec<(Vertex, Vertex, usize)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            if seen.insert((e.u, e.v)) {
                out.push((e.u, e.v, self.mu(e.u, e.v)));
            }
        }
        out
    }

    /// True when both graphs have the same vertex count and the same
    /// multiplicity for every labeled pair, ignoring edge ids.
    pub fn same_structure(&self, other: &Multigraph) -> bool {
        self.vertex_count == other.vertex_count && self.mult == other.mult
    }

    /// Renames vertex `x` to `perm[x]`. Edge ids are kept.
    pub fn relabel(&self, perm: &[Vertex]) -> Multigraph {
        assert_eq!(perm.len(), self.vertex_count, "permutation length");
        Multigraph::new(self.vertex_count, self.edges.iter().map(|e| Edge { id: e.id, u: perm[e.u], v: perm[e.v] }))
            .expect("relabeling keeps the graph valid")
    }

    /// Byte string equal for isomorphic graphs and different otherwise.
    pub fn canonical_key(&self) -> Vec<u8> {
        canon::canonical_key(self)
    }

    /// Hex form of [`Multigraph::canonical_key`], used in reports and
    /// checkpoints.
    pub fn canonical_hex(&self) -> String {
        hex::encode(self.canonical_key())
    }
}
