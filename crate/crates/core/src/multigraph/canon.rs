//! Canonical form by partition refinement and individualization.
//!
//! Cells are always split and ordered by label-independent signatures, so
//! the minimum adjacency string over all leaves of the search tree is an
//! isomorphism invariant. No automorphism pruning: the tree has at least
//! |Aut(G)| leaves, which is fine for the graph sizes used here.

use super::{Multigraph, Vertex};

type Partition = Vec<Vec<Vertex>>;

pub(super) fn canonical_key(g: &Multigraph) -> Vec<u8> {
    let n = g.vertex_count();
    let start = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    let start = refine(g, start);
    let mut best: Option<Vec<u32>> = None;
    search(g, start, &mut best);
    let mut key = Vec::with_capacity(4 + best.as_ref().map_or(0, |b| b.len() * 4));
    key.extend_from_slice(&(n as u32).to_be_bytes());
    for m in best.unwrap_or_default() {
        key.extend_from_slice(&m.to_be_bytes());
    }
    key
}

fn search(g: &Multigraph, part: Partition, best: &mut Option<Vec<u32>>) {
    let Some(target) = part.iter().position(|c| c.len() > 1) else {
        let order: Vec<Vertex> = part.into_iter().map(|c| c[0]).collect();
        let code = adjacency_code(g, &order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for &w in &part[target] {
        let mut next = Vec::with_capacity(part.len() + 1);
        next.extend(part[..target].iter().cloned());
        next.push(vec![w]);
        next.push(part[target].iter().copied().filter(|&x| x != w).collect());
        next.extend(part[target + 1..].iter().cloned());
        search(g, refine(g, next), best);
    }
}

fn adjacency_code(g: &Multigraph, order: &[Vertex]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            code.push(g.mu(order[i], order[j]) as u32);
        }
    }
    code
}

/// Splits cells until every vertex in a cell sees the same multiset of
/// multiplicities into every cell.
fn refine(g: &Multigraph, mut part: Partition) -> Partition {
    loop {
        let mut cell_of = vec![0usize; g.vertex_count()];
        for (i, c) in part.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(part.len());
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, usize)>, Vertex)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<(usize, usize)> = g.nbrs(v).map(|u| (cell_of[u], g.mu(u, v))).collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            let mut group: Vec<Vertex> = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    group.push(w[1].1);
                } else {
                    changed = true;
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                }
            }
            next.push(group);
        }
        part = next;
        if !changed {
            return part;
        }
    }
}
