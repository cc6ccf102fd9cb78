//! Exact edge coloring by backtracking.
//!
//! Edges are grouped into parallel classes and ordered greedily: the next
//! class is the one touching the most already-ordered edges, then the one
//! with the largest line-graph degree. Two symmetries are broken: a color
//! may exceed the largest color used so far by at most one, and parallel
//! edges (twins in L(G)) take strictly increasing colors. After each
//! assignment the residual is checked at the touched vertices: every pair
//! needs as many colors free at both ends as it has uncolored edges, and
//! every vertex needs its uncolored edges covered by the union of those
//! free sets.

use std::collections::BTreeMap;

use super::coloring::{validate, EdgeColoring};
use super::ChromaticError;
use crate::multigraph::{EdgeId, Multigraph, Vertex};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

/// Palettes are bitmasks, so no search uses more colors than this.
pub const MAX_COLORS: usize = 64;

/// Components up to this many vertices get the odd-set density bound.
const ODD_SET_LIMIT: usize = 12;

/// `max(Δ, τ, ⌈|E| / ⌊|V|/2⌋⌉)`; the last term only when `|V| ≥ 2`.
pub fn lower_bound(g: &Multigraph) -> usize {
    let st = g.stats();
    let n = g.vertex_count();
    let matching = if n >= 2 { st.edge_count.div_ceil(n / 2) } else { 0 };
    st.max_degree.max(st.tau).max(matching)
}

/// Shannon's bound `⌊3Δ/2⌋`.
pub fn shannon_upper(g: &Multigraph) -> usize {
    3 * g.max_degree() / 2
}

/// Vizing's multigraph bound `Δ + μ`.
pub fn multiplicity_upper(g: &Multigraph) -> usize {
    g.max_degree() + g.max_multiplicity()
}

/// Largest `⌈|E(W)| / ⌊|W|/2⌋⌉` over odd vertex sets `W` of size at least
/// three inside a component, for components of at most 12 vertices.
pub fn odd_set_bound(g: &Multigraph) -> usize {
    let mut best = 0;
    for comp in g.components() {
        let n = comp.len();
        if !(3..=ODD_SET_LIMIT).contains(&n) {
            continue;
        }
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size < 3 || size.is_multiple_of(2) {
                continue;
            }
            let mut inside = 0;
            for i in 0..n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for j in (i + 1)..n {
                    if mask & (1 << j) != 0 {
                        inside += g.mu(comp[i], comp[j]);
                    }
                }
            }
            best = best.max(inside.div_ceil(size / 2));
        }
    }
    best
}

/// Best certified lower bound the solver knows.
pub fn certified_lower_bound(g: &Multigraph) -> usize {
    lower_bound(g).max(odd_set_bound(g))
}

/// Exact edge-coloring solver with a per-call node budget.
#[derive(Debug, Clone)]
pub struct EdgeColorSolver {
    node_limit: u64,
    nodes: u64,
}

impl Default for EdgeColorSolver {
    fn default() -> Self {
        Self::new(DEFAULT_NODE_LIMIT)
    }
}

impl EdgeColorSolver {
    pub fn new(node_limit: u64) -> Self {
        Self { node_limit, nodes: 0 }
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    /// Search nodes explored over the lifetime of this solver.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// A proper coloring with colors `0..k`, `None` if there is none.
    /// Running out of budget is an error, never `None`.
    pub fn color_with(&mut self, g: &Multigraph, k: usize) -> Result<Option<EdgeColoring>, ChromaticError> {
        if g.edge_count() == 0 {
            return Ok(Some(EdgeColoring::new()));
        }
        if k < certified_lower_bound(g) {
            self.nodes += 1;
            return Ok(None);
        }
        if k > MAX_COLORS {
            return Err(ChromaticError::PaletteTooLarge { k, max: MAX_COLORS });
        }
        let mut budget = Budget { used: 0, limit: self.node_limit };
        let mut result = EdgeColoring::new();
        let mut outcome = Ok(true);
        for comp in g.components() {
            match ComponentSearch::new(g, &comp, k).run(&mut budget) {
                Ok(Some(part)) => result.extend_from(&part),
                Ok(None) => {
                    outcome = Ok(false);
                    break;
                }
                Err(e) => {
                    outcome = Err(e);
                    break;
                }
            }
        }
        self.nodes += budget.used;
        if !outcome? {
            return Ok(None);
        }
        if !validate(g, &result) || !result.is_total_for(g) {
            return Err(ChromaticError::Improper);
        }
        Ok(Some(result))
    }

    pub fn chromatic_index(&mut self, g: &Multigraph) -> Result<usize, ChromaticError> {
        self.chromatic_index_with_certificate(g).map(|(k, _)| k)
    }

    /// χ'(G) together with an optimal coloring.
    pub fn chromatic_index_with_certificate(
        &mut self,
        g: &Multigraph,
    ) -> Result<(usize, EdgeColoring), ChromaticError> {
        if g.edge_count() == 0 {
            return Ok((0, EdgeColoring::new()));
        }
        let mut k = certified_lower_bound(g);
        loop {
            if let Some(phi) = self.color_with(g, k)? {
                return Ok((k, phi));
            }
            k += 1;
        }
    }
}

/// [`EdgeColorSolver::color_with`] with the default budget.
pub fn chromatic_index_at_most(g: &Multigraph, k: usize) -> Result<Option<EdgeColoring>, ChromaticError> {
    EdgeColorSolver::default().color_with(g, k)
}

/// [`EdgeColorSolver::chromatic_index`] with the default budget.
pub fn chromatic_index(g: &Multigraph) -> Result<usize, ChromaticError> {
    EdgeColorSolver::default().chromatic_index(g)
}

struct Budget {
    used: u64,
    limit: u64,
}

struct ComponentSearch {
    k: usize,
    full: u64,
    ids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
    twin_prev: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
    nl: usize,
    used: Vec<u64>,
    rem: Vec<usize>,
    pair_rem: Vec<usize>,
    color: Vec<usize>,
}

impl ComponentSearch {
    fn new(g: &Multigraph, comp: &[Vertex], k: usize) -> Self {
        let nl = comp.len();
        let local: BTreeMap<Vertex, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        // parallel classes keyed by local endpoint pair, ids ascending
        let mut classes: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for e in g.edges() {
            if let (Some(&a), Some(&b)) = (local.get(&e.u), local.get(&e.v)) {
                classes.entry((a, b)).or_default().push(e.id);
            }
        }
        let classes: Vec<((usize, usize), Vec<EdgeId>)> = classes.into_iter().collect();
        let ldeg = |(a, b): (usize, usize)| g.deg(comp[a]) + g.deg(comp[b]);

        let mut placed = vec![false; classes.len()];
        let mut touching = vec![0usize; nl];
        let mut ids = Vec::new();
        let mut ends = Vec::new();
        let mut twin_prev = Vec::new();
        for _ in 0..classes.len() {
            let next = (0..classes.len())
                .filter(|&i| !placed[i])
                .max_by_key(|&i| {
                    let (a, b) = classes[i].0;
                    (touching[a] + touching[b], ldeg((a, b)), std::cmp::Reverse(classes[i].1[0]))
                })
                .expect("unplaced class remains");
            placed[next] = true;
            let ((a, b), members) = &classes[next];
            for (j, &id) in members.iter().enumerate() {
                ids.push(id);
                ends.push((*a, *b));
                twin_prev.push(j > 0);
            }
            touching[*a] += members.len();
            touching[*b] += members.len();
        }

        let mut nbrs = vec![Vec::new(); nl];
        let mut rem = vec![0; nl];
        let mut pair_rem = vec![0; nl * nl];
        for &((a, b), ref members) in &classes {
            nbrs[a].push(b);
            nbrs[b].push(a);
            rem[a] += members.len();
            rem[b] += members.len();
            pair_rem[a * nl + b] = members.len();
            pair_rem[b * nl + a] = members.len();
        }
        let full = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        let len = ids.len();
        Self { k, full, ids, ends, twin_prev, nbrs, nl, used: vec![0; nl], rem, pair_rem, color: vec![0; len] }
    }

    fn run(mut self, budget: &mut Budget) -> Result<Option<EdgeColoring>, ChromaticError> {
        if !(0..self.nl).all(|x| self.vertex_ok(x)) {
            budget.used += 1;
            return Ok(None);
        }
        if self.dfs(0, 0, budget)? {
            Ok(Some(self.ids.iter().copied().zip(self.color.iter().copied()).collect()))
        } else {
            Ok(None)
        }
    }

    fn vertex_ok(&self, x: usize) -> bool {
        let free_x = !self.used[x] & self.full;
        let mut union = 0u64;
        for &y in &self.nbrs[x] {
            let r = self.pair_rem[x * self.nl + y];
            if r == 0 {
                continue;
            }
            let avail = free_x & !self.used[y];
            if (avail.count_ones() as usize) < r {
                return false;
            }
            union |= avail;
        }
        union.count_ones() as usize >= self.rem[x]
    }

    fn feasible_around(&self, a: usize, b: usize) -> bool {
        if !self.vertex_ok(a) || !self.vertex_ok(b) {
            return false;
        }
        self.nbrs[a].iter().chain(&self.nbrs[b]).all(|&y| y == a || y == b || self.vertex_ok(y))
    }

    fn set(&mut self, pos: usize, c: usize, on: bool) {
        let (a, b) = self.ends[pos];
        let bit = 1u64 << c;
        if on {
            self.used[a] |= bit;
            self.used[b] |= bit;
            self.rem[a] -= 1;
            self.rem[b] -= 1;
            self.pair_rem[a * self.nl + b] -= 1;
            self.pair_rem[b * self.nl + a] -= 1;
            self.color[pos] = c;
        } else {
            self.used[a] &= !bit;
            self.used[b] &= !bit;
            self.rem[a] += 1;
            self.rem[b] += 1;
            self.pair_rem[a * self.nl + b] += 1;
            self.pair_rem[b * self.nl + a] += 1;
        }
    }

    fn dfs(&mut self, pos: usize, opened: usize, budget: &mut Budget) -> Result<bool, ChromaticError> {
        budget.used += 1;
        if budget.used > budget.limit {
            return Err(ChromaticError::BudgetExceeded { limit: budget.limit });
        }
        if pos == self.ids.len() {
            return Ok(true);
        }
        let (a, b) = self.ends[pos];
        let cap = self.k.min(opened + 1);
        let mut cand = !(self.used[a] | self.used[b]) & self.full & low_mask(cap);
        if self.twin_prev[pos] {
            cand &= !low_mask(self.color[pos - 1] + 1);
        }
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.set(pos, c, true);
            if self.feasible_around(a, b) && self.dfs(pos + 1, opened.max(c + 1), budget)? {
                return Ok(true);
            }
            self.set(pos, c, false);
        }
        Ok(false)
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
