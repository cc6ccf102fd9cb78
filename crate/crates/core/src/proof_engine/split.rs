use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::selection::PivotSelection;
use super::EngineError;
use crate::chromatic::{missing_colors, Color, EdgeColoring, Palette};
use crate::multigraph::{EdgeId, Multigraph};

/// How the pivot edges are divided between the directly colored set and the
/// set that receives fresh colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    /// Direct edges reach as many distinct neighbors as possible.
    SpreadNeighbors,
    /// Direct edges all go to the heaviest neighbor.
    SingleStar,
    /// `ℓ` direct edges taking at least half of each leading class.
    HalfFill,
}

impl SplitStrategy {
    pub const DEFAULT_ORDER: [SplitStrategy; 3] =
        [SplitStrategy::SpreadNeighbors, SplitStrategy::SingleStar, SplitStrategy::HalfFill];
}

impl fmt::Display for SplitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitStrategy::SpreadNeighbors => "spread",
            SplitStrategy::SingleStar => "single",
            SplitStrategy::HalfFill => "half",
        })
    }
}

impl FromStr for SplitStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "spread" | "spread-neighbors" => Ok(SplitStrategy::SpreadNeighbors),
            "single" | "single-star" => Ok(SplitStrategy::SingleStar),
            "half" | "half-fill" => Ok(SplitStrategy::HalfFill),
            other => Err(format!("unknown strategy `{other}` (expected spread, single or half)")),
        }
    }
}

/// The pivot edges divided three ways.
///
/// `s0` edges will get the missing colors `c_colors` directly. `t0` edges
/// get the fresh colors beyond the base palette, one each. `reserve` holds
/// the pivot edge left over when `s0` has only `ℓ` edges; it is treated like
/// an `s0` edge and takes the last entry of `c_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaletteSplit {
    pub strategy: SplitStrategy,
    pub s0: Vec<EdgeId>,
    pub reserve: Vec<EdgeId>,
    pub t0: Vec<(EdgeId, Color)>,
    pub c_colors: Vec<Color>,
}

impl PaletteSplit {
    /// `s0` followed by `reserve`, aligned with `c_colors`.
    pub fn direct_edges(&self) -> Vec<EdgeId> {
        self.s0.iter().chain(&self.reserve).copied().collect()
    }
}

/// Divides the selected pivot edges for an `(s + t - 2)`-coloring whose
/// base palette is `0..base` (`base = t + ℓ - 1`). Fresh colors are
/// `base..base + s - ℓ - 1`. `phi` colors the graph minus the selection.
pub fn split_palette(
    g: &Multigraph,
    sel: &PivotSelection,
    ell: usize,
    base: usize,
    phi: &EdgeColoring,
    strategy: SplitStrategy,
) -> Result<PaletteSplit, EngineError> {
    let s = sel.size();
    let infeasible = |reason: String| EngineError::Infeasible { strategy, reason };
    if s < ell + 1 {
        return Err(infeasible(format!("only {s} pivot edges for {} direct colors", ell + 1)));
    }
    let missing = missing_colors(g, phi, sel.v, &Palette::base(base))?;
    if missing.len() < ell + 1 {
        return Err(EngineError::TooFewMissing { have: missing.len(), need: ell + 1 });
    }
    let c_colors: Vec<Color> = missing.iter().copied().take(ell + 1).collect();

    let s0 = match strategy {
        SplitStrategy::SpreadNeighbors => spread(sel, ell + 1),
        SplitStrategy::SingleStar => {
            let first = &sel.by_neighbor[0];
            if first.len() < ell + 1 {
                return Err(infeasible(format!(
                    "heaviest neighbor has {} selected edges, need {}",
                    first.len(),
                    ell + 1
                )));
            }
            first[first.len() - (ell + 1)..].to_vec()
        }
        SplitStrategy::HalfFill => half_fill(sel, ell).map_err(infeasible)?,
    };

    let taken: BTreeSet<EdgeId> = s0.iter().copied().collect();
    let mut rest: Vec<Vec<EdgeId>> =
        sel.by_neighbor.iter().map(|class| class.iter().copied().filter(|e| !taken.contains(e)).collect()).collect();

    let mut reserve = Vec::new();
    if s0.len() < ell + 1 {
        // the neighbor keeping the most edges gives one up
        let i = (0..rest.len())
            .max_by_key(|&i| (rest[i].len(), std::cmp::Reverse(i)))
            .filter(|&i| !rest[i].is_empty())
            .ok_or_else(|| infeasible("no edge left for the reserve".into()))?;
        reserve.push(rest[i].pop().unwrap());
    }

    // fresh colors: one per neighbor first, then the rest by edge id
    let mut order: Vec<EdgeId> = rest.iter().filter_map(|class| class.first().copied()).collect();
    let firsts: BTreeSet<EdgeId> = order.iter().copied().collect();
    let mut later: Vec<EdgeId> = rest.iter().flatten().copied().filter(|e| !firsts.contains(e)).collect();
    later.sort_unstable();
    order.extend(later);
    rest.clear();
    debug_assert_eq!(order.len(), s - ell - 1);
    let t0 = order.into_iter().enumerate().map(|(j, e)| (e, base + j)).collect();

    Ok(PaletteSplit { strategy, s0, reserve, t0, c_colors })
}

/// Up to `want` edges covering as many distinct neighbors as possible,
/// preferring neighbors that keep another selected edge.
fn spread(sel: &PivotSelection, want: usize) -> Vec<EdgeId> {
    let mut ranked: Vec<((usize, bool, usize), EdgeId)> = Vec::new();
    for (i, class) in sel.by_neighbor.iter().enumerate() {
        for (depth, &e) in class.iter().rev().enumerate() {
            ranked.push(((depth, class.len() == 1, i), e));
        }
    }
    ranked.sort_unstable();
    ranked.into_iter().take(want).map(|(_, e)| e).collect()
}

/// `ℓ` edges: all of the heaviest class when it has exactly `ℓ` selected
/// edges; otherwise, with `i0` the first index where the selected counts
/// reach `ℓ`, at least `⌊s_i/2⌋` from each class `i ≤ i0` and none beyond.
fn half_fill(sel: &PivotSelection, ell: usize) -> Result<Vec<EdgeId>, String> {
    if ell == 0 {
        return Ok(Vec::new());
    }
    let counts = &sel.counts;
    if counts[0] == ell {
        return Ok(sel.by_neighbor[0].clone());
    }
    let mut prefix = 0;
    let mut i0 = None;
    for (i, &c) in counts.iter().enumerate() {
        prefix += c;
        if prefix >= ell {
            i0 = Some(i);
            break;
        }
    }
    let i0 = i0.ok_or_else(|| format!("only {prefix} selected edges, need {ell}"))?;
    let mut take: Vec<usize> = counts[..=i0].iter().map(|c| c / 2).collect();
    let floor_sum: usize = take.iter().sum();
    if floor_sum > ell {
        return Err(format!("half of the leading classes is {floor_sum} > {ell}"));
    }
    let mut left = ell - floor_sum;
    for i in 0..=i0 {
        let extra = left.min(counts[i] - take[i]);
        take[i] += extra;
        left -= extra;
    }
    Ok((0..=i0).flat_map(|i| sel.by_neighbor[i][..take[i]].iter().copied()).collect())
}
