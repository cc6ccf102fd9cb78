use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::coloring::{validate, Color, EdgeColoring};
use super::ChromaticError;
use crate::multigraph::{EdgeId, Multigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KempeShape {
    Path,
    EvenCycle,
}

/// A connected component of the subgraph spanned by two colors. Edges are
/// listed in walk order, so consecutive edges share a vertex and alternate
/// colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeComponent {
    pub edge_ids: Vec<EdgeId>,
    pub shape: KempeShape,
    pub colors: (Color, Color),
}

impl KempeComponent {
    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }
}

/// The `(c, alpha)` component through `x`; empty when `x` sees neither color.
pub fn kempe_component(
    g: &Multigraph,
    phi: &EdgeColoring,
    c: Color,
    alpha: Color,
    x: Vertex,
) -> Result<KempeComponent, ChromaticError> {
    if c == alpha {
        return Err(ChromaticError::SameColors(c));
    }
    g.degree(x)?;
    // incidence restricted to the two colors
    let mut at: BTreeMap<Vertex, Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        if let Some(col) = phi.get(e.id) {
            if col == c || col == alpha {
                at.entry(e.u).or_default().push(e.id);
                at.entry(e.v).or_default().push(e.id);
            }
        }
    }
    if at.values().any(|l| l.len() > 2) {
        return Err(ChromaticError::Improper);
    }
    let empty = KempeComponent { edge_ids: Vec::new(), shape: KempeShape::Path, colors: (c, alpha) };
    if !at.contains_key(&x) {
        return Ok(empty);
    }

    // collect the vertex set of the component
    let mut verts = BTreeSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for &id in at.get(&y).into_iter().flatten() {
            let z = g.edge(id).expect("colored edge in graph").other(y);
            if verts.insert(z) {
                stack.push(z);
            }
        }
    }
    let end = verts.iter().copied().find(|v| at.get(v).is_some_and(|l| l.len() == 1));
    let (start, shape) = match end {
        Some(v) => (v, KempeShape::Path),
        None => (x, KempeShape::EvenCycle),
    };

    let mut walk = Vec::new();
    let mut cur = start;
    let mut prev: Option<EdgeId> = None;
    loop {
        let next = at[&cur].iter().copied().filter(|&id| Some(id) != prev).min();
        let Some(id) = next else { break };
        if walk.first() == Some(&id) {
            break;
        }
        walk.push(id);
        cur = g.edge(id).unwrap().other(cur);
        prev = Some(id);
    }
    Ok(KempeComponent { edge_ids: walk, shape, colors: (c, alpha) })
}

/// Exchanges the two colors on `comp`. Rejects anything that is not a full
/// component of `phi`, since swapping part of one breaks properness.
pub fn kempe_swap(g: &Multigraph, phi: &EdgeColoring, comp: &KempeComponent) -> Result<EdgeColoring, ChromaticError> {
    let Some(&first) = comp.edge_ids.first() else {
        return Ok(phi.clone());
    };
    let (c, alpha) = comp.colors;
    let e = g.edge(first).ok_or(ChromaticError::NotAComponent)?;
    let actual = kempe_component(g, phi, c, alpha, e.u)?;
    let want: BTreeSet<_> = comp.edge_ids.iter().collect();
    let have: BTreeSet<_> = actual.edge_ids.iter().collect();
    if want != have || want.len() != comp.edge_ids.len() {
        return Err(ChromaticError::NotAComponent);
    }
    let mut out = phi.clone();
    for &id in &comp.edge_ids {
        let col = phi.get(id).expect("component edges are colored");
        out.set(id, if col == c { alpha } else { c });
    }
    if !validate(g, &out) {
        return Err(ChromaticError::Improper);
    }
    Ok(out)
}
