use std::collections::BTreeSet;

use serde::Serialize;

use super::split::PaletteSplit;
use super::EngineError;
use crate::chromatic::{validate, Color, EdgeColoring, Palette};
use crate::multigraph::{EdgeId, Multigraph, Vertex};

/// Bipartite graph between the direct edges and the fresh-colored edges at
/// the pivot. A direct edge `e_i = v x_i` is blocked when some edge
/// `e'_i = x_i z` already carries `c_i`; it is adjacent to `e_{α_j} = v y_j`
/// when `e'_i` can take `α_j`, i.e. `y_j` is neither `x_i` nor `z`.
/// Unblocked direct edges need no recoloring and are adjacent to everything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HelperBipartite {
    pub left: Vec<EdgeId>,
    pub left_colors: Vec<Color>,
    pub right: Vec<(EdgeId, Color)>,
    pub adjacency: Vec<Vec<bool>>,
    /// The `c_i`-colored edge at `x_i`, if any.
    pub blocked: Vec<Option<EdgeId>>,
}

impl HelperBipartite {
    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&a| a).count()
    }

    pub fn blocked_indices(&self) -> Vec<usize> {
        (0..self.left.len()).filter(|&i| self.blocked[i].is_some()).collect()
    }

    /// The subgraph on the given left indices, in that order.
    pub fn restricted(&self, idx: &[usize]) -> HelperBipartite {
        HelperBipartite {
            left: idx.iter().map(|&i| self.left[i]).collect(),
            left_colors: idx.iter().map(|&i| self.left_colors[i]).collect(),
            right: self.right.clone(),
            adjacency: idx.iter().map(|&i| self.adjacency[i].clone()).collect(),
            blocked: idx.iter().map(|&i| self.blocked[i]).collect(),
        }
    }
}

/// The endpoint of pivot edge `e` other than `pivot`.
fn far_end(g: &Multigraph, e: EdgeId, pivot: Vertex) -> Vertex {
    g.edge(e).expect("pivot edge in graph").other(pivot)
}

pub fn build_helper(g: &Multigraph, phi: &EdgeColoring, split: &PaletteSplit, pivot: Vertex) -> HelperBipartite {
    let left = split.direct_edges();
    let left_colors = split.c_colors.clone();
    let right = split.t0.clone();
    let mut adjacency = Vec::with_capacity(left.len());
    let mut blocked = Vec::with_capacity(left.len());
    for (&e, &c) in left.iter().zip(&left_colors) {
        let x = far_end(g, e, pivot);
        let blocker = g.edges_at(x).into_iter().find(|&id| phi.get(id) == Some(c));
        let row = match blocker {
            None => vec![true; right.len()],
            Some(b) => {
                let z = g.edge(b).unwrap().other(x);
                right
                    .iter()
                    .map(|&(f, _)| {
                        let y = far_end(g, f, pivot);
                        y != x && y != z
                    })
                    .collect()
            }
        };
        adjacency.push(row);
        blocked.push(blocker);
    }
    HelperBipartite { left, left_colors, right, adjacency, blocked }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HallOutcome {
    /// `(left index, right index)` pairs covering every left vertex.
    Saturating { pairs: Vec<(usize, usize)> },
    /// An inclusion-minimal left set with fewer neighbors than members.
    Violating { left: Vec<usize> },
}

/// Maximum matching by augmenting paths. Returns `match_of_left`.
fn max_matching(adj: &[Vec<bool>], right_len: usize) -> Vec<Option<usize>> {
    fn augment(u: usize, adj: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for r in 0..adj[u].len() {
            if adj[u][r] && !seen[r] {
                seen[r] = true;
                if owner[r].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[r] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right_len];
    for u in 0..adj.len() {
        let mut seen = vec![false; right_len];
        augment(u, adj, &mut seen, &mut owner);
    }
    let mut mate = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            mate[*u] = Some(r);
        }
    }
    mate
}

/// Size of a maximum matching of `t`.
pub(crate) fn matching_size(t: &HelperBipartite) -> usize {
    max_matching(&t.adjacency, t.right.len()).iter().flatten().count()
}

/// Left vertices reachable by alternating paths from an unmatched left
/// vertex; this set has exactly one more member than neighbors.
fn deficient_set(adj: &[Vec<bool>], members: &[usize]) -> Option<Vec<usize>> {
    let right_len = adj.first().map_or(0, Vec::len);
    let sub: Vec<Vec<bool>> = members.iter().map(|&i| adj[i].clone()).collect();
    let mate = max_matching(&sub, right_len);
    let start = mate.iter().position(Option::is_none)?;
    let mut owner = vec![None; right_len];
    for (u, m) in mate.iter().enumerate() {
        if let Some(r) = m {
            owner[*r] = Some(u);
        }
    }
    let mut reached = BTreeSet::from([start]);
    let mut stack = vec![start];
    let mut seen_r = vec![false; right_len];
    while let Some(u) = stack.pop() {
        for r in 0..right_len {
            if sub[u][r] && !seen_r[r] {
                seen_r[r] = true;
                let w = owner[r].expect("a maximum matching leaves no augmenting path");
                if reached.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    Some(reached.into_iter().map(|u| members[u]).collect())
}

/// A saturating matching, or an inclusion-minimal Hall violator.
pub fn hall_matching(t: &HelperBipartite) -> HallOutcome {
    let mate = max_matching(&t.adjacency, t.right.len());
    if mate.iter().all(Option::is_some) {
        let pairs = mate.iter().enumerate().map(|(u, r)| (u, r.unwrap())).collect();
        return HallOutcome::Saturating { pairs };
    }
    let all: Vec<usize> = (0..t.left.len()).collect();
    let mut w = deficient_set(&t.adjacency, &all).expect("matching is not saturating");
    // shrink until every one-smaller subset satisfies Hall's condition
    'shrink: loop {
        for k in 0..w.len() {
            let rest: Vec<usize> = w.iter().copied().filter(|&x| x != w[k]).collect();
            if let Some(smaller) = deficient_set(&t.adjacency, &rest) {
                w = smaller;
                continue 'shrink;
            }
        }
        break;
    }
    HallOutcome::Violating { left: w }
}

/// Colors every direct edge with its `c_i`, moving each blocking edge to the
/// fresh color it is matched with. `pairs` index into `t.left`/`t.right`.
pub fn apply_matching_repair(
    g: &Multigraph,
    phi: &EdgeColoring,
    t: &HelperBipartite,
    pairs: &[(usize, usize)],
) -> Result<(EdgeColoring, Vec<(EdgeId, Color)>), EngineError> {
    let mut out = phi.clone();
    let mut recolored = Vec::new();
    for (i, (&e, &c)) in t.left.iter().zip(&t.left_colors).enumerate() {
        if let Some(b) = t.blocked[i] {
            let &(_, j) = pairs.iter().find(|&&(l, _)| l == i).ok_or(EngineError::NotSaturating)?;
            let alpha = t.right[j].1;
            out.set(b, alpha);
            recolored.push((b, alpha));
        }
        out.set(e, c);
    }
    if !validate(g, &out) {
        return Err(EngineError::RepairImproper);
    }
    Ok((out, recolored))
}

/// Colors of `palette` seen neither at the pivot nor between `x` and `y`.
pub fn available_pair_colors(
    g: &Multigraph,
    phi: &EdgeColoring,
    pivot: Vertex,
    x: Vertex,
    y: Vertex,
    palette: &Palette,
) -> BTreeSet<Color> {
    let used: BTreeSet<Color> =
        g.edges_at(pivot).into_iter().chain(g.edges_between(x, y)).filter_map(|e| phi.get(e)).collect();
    palette.colors().iter().copied().filter(|c| !used.contains(c)).collect()
}
