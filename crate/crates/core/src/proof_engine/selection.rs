use serde::Serialize;

use super::EngineError;
use crate::multigraph::{EdgeId, Multigraph, Vertex};

/// A maximum-degree vertex with the most distinct neighbors; ties go to the
/// smallest index.
pub fn choose_pivot(g: &Multigraph) -> Result<Vertex, EngineError> {
    if g.edge_count() == 0 {
        return Err(EngineError::Edgeless);
    }
    let delta = g.max_degree();
    let pivot = (0..g.vertex_count())
        .filter(|&v| g.deg(v) == delta)
        .max_by_key(|&v| (g.nbrs(v).count(), std::cmp::Reverse(v)))
        .expect("a vertex attains the maximum degree");
    Ok(pivot)
}

/// The pivot, its neighbors by descending multiplicity, and the `s` pivot
/// edges picked round-robin across them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotSelection {
    pub v: Vertex,
    /// Neighbors sorted by `m(v, u)` descending, then by index.
    pub neighbor_order: Vec<Vertex>,
    /// Selected edges in pick order.
    pub s_v: Vec<EdgeId>,
    /// `s(v, u)` aligned with `neighbor_order`.
    pub counts: Vec<usize>,
    /// The selected edges towards each neighbor, aligned with `neighbor_order`.
    pub by_neighbor: Vec<Vec<EdgeId>>,
}

impl PivotSelection {
    pub fn size(&self) -> usize {
        self.s_v.len()
    }

    /// Neighbors reached by at least one selected edge.
    pub fn covered_neighbors(&self) -> Vec<Vertex> {
        self.neighbor_order.iter().zip(&self.counts).filter(|(_, &c)| c > 0).map(|(&u, _)| u).collect()
    }

    pub fn position_of(&self, u: Vertex) -> Option<usize> {
        self.neighbor_order.iter().position(|&x| x == u)
    }
}

/// Picks `s` edges at `v`: one from each parallel class in neighbor order per
/// cycle, skipping exhausted classes, until `s` are chosen. Within a class
/// edges are taken in id order.
pub fn select_s_v(g: &Multigraph, v: Vertex, s: usize) -> Result<PivotSelection, EngineError> {
    let degree = g.degree(v)?;
    if s > degree {
        return Err(EngineError::SelectionTooLarge { s, degree });
    }
    let mut neighbor_order: Vec<Vertex> = g.nbrs(v).collect();
    neighbor_order.sort_by_key(|&u| (std::cmp::Reverse(g.mu(v, u)), u));
    let classes: Vec<Vec<EdgeId>> = neighbor_order.iter().map(|&u| g.edges_between(v, u)).collect();

    let mut counts = vec![0; classes.len()];
    let mut s_v = Vec::with_capacity(s);
    while s_v.len() < s {
        for (i, class) in classes.iter().enumerate() {
            if s_v.len() == s {
                break;
            }
            if counts[i] < class.len() {
                s_v.push(class[counts[i]]);
                counts[i] += 1;
            }
        }
    }
    let by_neighbor = classes.iter().zip(&counts).map(|(c, &k)| c[..k].to_vec()).collect();
    Ok(PivotSelection { v, neighbor_order, s_v, counts, by_neighbor })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Star at 0 with the given multiplicities towards 1, 2, ...
    fn fan(ms: &[usize]) -> Multigraph {
        let pairs: Vec<_> = ms.iter().enumerate().map(|(i, &m)| (0, i + 1, m)).collect();
        Multigraph::from_edge_list(&pairs).unwrap()
    }

    #[test]
    fn pivot_examples() {
        // doubled edge 0-1, pendant path 0-2-3: degrees (3, 2, 2, 1)
        let g = Multigraph::from_edge_list(&[(0, 1, 2), (0, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(choose_pivot(&g).unwrap(), 0);
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5, 2)).collect();
        assert_eq!(choose_pivot(&Multigraph::from_edge_list(&c5).unwrap()).unwrap(), 0);
        assert_eq!(choose_pivot(&fan(&[1, 1, 1, 1])).unwrap(), 0);
        assert_eq!(choose_pivot(&Multigraph::with_vertices(3, &[]).unwrap()), Err(EngineError::Edgeless));
    }

    #[test]
    fn pivot_prefers_more_neighbors() {
        // 0 has degree 4 via two doubled edges, 5 has degree 4 via four simple edges
        let g =
            Multigraph::from_edge_list(&[(0, 1, 2), (0, 2, 2), (5, 6, 1), (5, 7, 1), (5, 8, 1), (5, 9, 1)]).unwrap();
        assert_eq!(choose_pivot(&g).unwrap(), 5);
    }

    #[test]
    fn round_robin_examples() {
        assert_eq!(select_s_v(&fan(&[3, 1]), 0, 3).unwrap().counts, vec![2, 1]);
        assert_eq!(select_s_v(&fan(&[2, 2, 2]), 0, 3).unwrap().counts, vec![1, 1, 1]);
        let sel = select_s_v(&fan(&[5, 1, 1]), 0, 5).unwrap();
        assert_eq!(sel.counts, vec![3, 1, 1]);
        assert_eq!(sel.s_v.len(), 5);
        assert_eq!(sel.covered_neighbors(), vec![1, 2, 3]);
    }

    #[test]
    fn neighbor_order_sorts_by_multiplicity() {
        let sel = select_s_v(&fan(&[1, 3, 2]), 0, 4).unwrap();
        assert_eq!(sel.neighbor_order, vec![2, 3, 1]);
        assert_eq!(sel.counts, vec![2, 1, 1]);
    }

    #[test]
    fn too_many_edges_requested() {
        assert_eq!(select_s_v(&fan(&[1, 1]), 0, 3), Err(EngineError::SelectionTooLarge { s: 3, degree: 2 }));
    }
}
