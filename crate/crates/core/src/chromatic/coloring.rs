use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ChromaticError;
use crate::multigraph::{EdgeId, Multigraph, Vertex};

/// Colors are 0-based.
pub type Color = usize;

/// An ordered finite set of colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    colors: Vec<Color>,
}

impl Palette {
    /// Colors `0..size`.
    pub fn base(size: usize) -> Self {
        Self { colors: (0..size).collect() }
    }

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        let set: BTreeSet<Color> = colors.into_iter().collect();
        Self { colors: set.into_iter().collect() }
    }

    /// Colors `start..start + len`.
    pub fn range(start: Color, len: usize) -> Self {
        Self { colors: (start..start + len).collect() }
    }

    pub fn base_size(&self) -> usize {
        self.colors.len()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.colors.binary_search(&c).is_ok()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }
}

/// Partial map from edge ids to colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring {
    assignment: BTreeMap<EdgeId, Color>,
}

impl EdgeColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, id: EdgeId) -> Option<Color> {
        self.assignment.get(&id).copied()
    }

    pub fn set(&mut self, id: EdgeId, c: Color) -> Option<Color> {
        self.assignment.insert(id, c)
    }

    pub fn unset(&mut self, id: EdgeId) -> Option<Color> {
        self.assignment.remove(&id)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.assignment.iter().map(|(&e, &c)| (e, c))
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        self.assignment.values().collect::<BTreeSet<_>>().len()
    }

    /// One more than the largest color in use, 0 when empty.
    pub fn span(&self) -> usize {
        self.assignment.values().max().map_or(0, |&c| c + 1)
    }

    /// True when every edge of `g` is colored.
    pub fn is_total_for(&self, g: &Multigraph) -> bool {
        g.edge_ids().all(|id| self.assignment.contains_key(&id))
    }

    /// Colors on the colored edges at `x`.
    pub fn colors_at(&self, g: &Multigraph, x: Vertex) -> BTreeSet<Color> {
        g.edges().iter().filter(|e| e.touches(x)).filter_map(|e| self.get(e.id)).collect()
    }

    /// Merges another coloring in; entries of `other` win on overlap.
    pub fn extend_from(&mut self, other: &EdgeColoring) {
        self.assignment.extend(other.assignment.iter().map(|(&e, &c)| (e, c)));
    }

    /// `palette <size>` header followed by `edge_id color` lines.
    pub fn to_text(&self, palette_size: usize) -> String {
        let mut out = format!("palette {palette_size}\n");
        for (e, c) in self.iter() {
            writeln!(out, "{e} {c}").unwrap();
        }
        out
    }

    /// Inverse of [`EdgeColoring::to_text`]; returns the palette size too.
    pub fn from_text(text: &str) -> Result<(usize, EdgeColoring), ChromaticError> {
        let bad = |line: usize, msg: &str| ChromaticError::Format { line, message: msg.to_string() };
        let mut palette = None;
        let mut coloring = EdgeColoring::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "palette" {
                if fields.len() != 2 || palette.is_some() {
                    return Err(bad(i + 1, "bad palette header"));
                }
                palette = Some(fields[1].parse().map_err(|_| bad(i + 1, "bad palette size"))?);
                continue;
            }
            if palette.is_none() {
                return Err(bad(i + 1, "missing palette header"));
            }
            if fields.len() != 2 {
                return Err(bad(i + 1, "expected `edge_id color`"));
            }
            let e: EdgeId = fields[0].parse().map_err(|_| bad(i + 1, "bad edge id"))?;
            let c: Color = fields[1].parse().map_err(|_| bad(i + 1, "bad color"))?;
            if coloring.set(e, c).is_some() {
                return Err(bad(i + 1, "edge colored twice"));
            }
        }
        let palette = palette.ok_or_else(|| bad(0, "missing palette header"))?;
        Ok((palette, coloring))
    }
}

impl FromIterator<(EdgeId, Color)> for EdgeColoring {
    fn from_iter<I: IntoIterator<Item = (EdgeId, Color)>>(iter: I) -> Self {
        Self { assignment: iter.into_iter().collect() }
    }
}

/// True iff no two colored edges sharing an endpoint carry the same color.
/// Entries for edges absent from `g` make the coloring invalid.
pub fn validate(g: &Multigraph, phi: &EdgeColoring) -> bool {
    if phi.iter().any(|(id, _)| g.edge(id).is_none()) {
        return false;
    }
    let mut seen: BTreeSet<(Vertex, Color)> = BTreeSet::new();
    for e in g.edges() {
        if let Some(c) = phi.get(e.id) {
            if !seen.insert((e.u, c)) || !seen.insert((e.v, c)) {
                return false;
            }
        }
    }
    true
}

/// Colors of `palette` not used on any colored edge at `x`.
pub fn missing_colors(
    g: &Multigraph,
    phi: &EdgeColoring,
    x: Vertex,
    palette: &Palette,
) -> Result<BTreeSet<Color>, ChromaticError> {
    g.degree(x)?;
    let present = phi.colors_at(g, x);
    Ok(palette.colors().iter().copied().filter(|c| !present.contains(c)).collect())
}
