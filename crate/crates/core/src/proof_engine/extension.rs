use std::collections::BTreeSet;

use serde::Serialize;

use super::helper::{
    apply_matching_repair, available_pair_colors, build_helper, hall_matching, matching_size, HallOutcome,
    HelperBipartite,
};
use super::selection::{choose_pivot, select_s_v, PivotSelection};
use super::split::{split_palette, PaletteSplit, SplitStrategy};
use super::EngineError;
use crate::chromatic::{
    kempe_component, kempe_swap, missing_colors, validate, Color, EdgeColorSolver, EdgeColoring, KempeShape, Palette,
    DEFAULT_NODE_LIMIT,
};
use crate::multigraph::{EdgeId, Multigraph, Vertex};
use crate::tihany::admissible_floor;

#[derive(Debug, Clone)]
pub struct EngineOptions {
    /// Split strategies, tried in this order.
    pub strategies: Vec<SplitStrategy>,
    /// Node budget for the residual coloring.
    pub node_limit: u64,
    /// Kempe swaps allowed per strategy.
    pub max_kempe_swaps: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { strategies: SplitStrategy::DEFAULT_ORDER.to_vec(), node_limit: DEFAULT_NODE_LIMIT, max_kempe_swaps: 32 }
    }
}

/// One logged step. Steps that change colors carry enough data to replay
/// them; the rest are diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Pivot {
        v: Vertex,
        degree: usize,
        neighbors: usize,
    },
    SelectSv {
        s_v: Vec<EdgeId>,
        neighbor_order: Vec<Vertex>,
        counts: Vec<usize>,
    },
    /// Coloring of `G - S_v` with the base palette; replay starts here.
    ResidualColoring {
        palette: usize,
        coloring: EdgeColoring,
    },
    MissingAtPivot {
        colors: Vec<Color>,
    },
    /// Replay resets to the residual coloring.
    StrategyStart {
        strategy: SplitStrategy,
    },
    SplitInfeasible {
        strategy: SplitStrategy,
        reason: String,
    },
    Split {
        s0: Vec<EdgeId>,
        reserve: Vec<EdgeId>,
        t0: Vec<(EdgeId, Color)>,
        c_colors: Vec<Color>,
    },
    Assign {
        edges: Vec<(EdgeId, Color)>,
    },
    Helper {
        left: Vec<EdgeId>,
        right: Vec<EdgeId>,
        degrees: Vec<usize>,
        blocked: Vec<Option<EdgeId>>,
    },
    Bookkeeping {
        covered_neighbors: usize,
        missing: usize,
        blocked: usize,
        deficiency: usize,
    },
    Matching {
        pairs: Vec<(EdgeId, EdgeId)>,
    },
    HallViolation {
        edges: Vec<EdgeId>,
    },
    KempeSwap {
        c: Color,
        alpha: Color,
        at: Vertex,
        edges: Vec<EdgeId>,
        shape: KempeShape,
    },
    Recolor {
        changes: Vec<(EdgeId, Color)>,
    },
    /// Replay resets to the residual coloring, then applies `changes`.
    GreedyCompletion {
        changes: Vec<(EdgeId, Color)>,
    },
    Extended {
        colors_used: usize,
    },
    Failed {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ExtensionResult {
    Extended { coloring: EdgeColoring, colors_used: usize },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionOutcome {
    #[serde(flatten)]
    pub result: ExtensionResult,
    pub trace: Vec<TraceStep>,
}

impl ExtensionOutcome {
    pub fn is_extended(&self) -> bool {
        matches!(self.result, ExtensionResult::Extended { .. })
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match &self.result {
            ExtensionResult::Extended { coloring, .. } => Some(coloring),
            ExtensionResult::Failed { .. } => None,
        }
    }

    /// The coloring obtained by re-applying every recoloring step, or `None`
    /// when no residual coloring was reached.
    pub fn replay(&self) -> Option<EdgeColoring> {
        let mut residual: Option<EdgeColoring> = None;
        let mut cur = EdgeColoring::new();
        for step in &self.trace {
            match step {
                TraceStep::ResidualColoring { coloring, .. } => {
                    residual = Some(coloring.clone());
                    cur = coloring.clone();
                }
                TraceStep::StrategyStart { .. } => cur = residual.clone()?,
                TraceStep::Assign { edges: changes } | TraceStep::Recolor { changes } => {
                    for &(e, c) in changes {
                        cur.set(e, c);
                    }
                }
                TraceStep::GreedyCompletion { changes } => {
                    cur = residual.clone()?;
                    for &(e, c) in changes {
                        cur.set(e, c);
                    }
                }
                TraceStep::KempeSwap { c, alpha, edges, .. } => {
                    for &e in edges {
                        let old = cur.get(e)?;
                        cur.set(e, if old == *c { *alpha } else { *c });
                    }
                }
                _ => {}
            }
        }
        residual.map(|_| cur)
    }
}

struct Attempt<'a> {
    g: &'a Multigraph,
    sel: PivotSelection,
    ell: usize,
    base: usize,
    target: usize,
    opts: &'a EngineOptions,
    trace: Vec<TraceStep>,
}

/// Tries to turn a `(t + ℓ - 1)`-coloring of `G - S_v` into an
/// `(s + t - 2)`-coloring of `G`.
pub fn attempt_extension(
    g: &Multigraph,
    s: usize,
    t: usize,
    ell: usize,
    opts: &EngineOptions,
) -> Result<ExtensionOutcome, EngineError> {
    let omega = g.stats().omega_prime;
    if s > t {
        return Err(EngineError::Precondition(format!("s = {s} exceeds t = {t}")));
    }
    let floor = admissible_floor(ell);
    if s < floor {
        return Err(EngineError::Precondition(format!("s = {s} is below {floor} for ell = {ell}")));
    }
    if s + t - 1 <= omega {
        return Err(EngineError::Precondition(format!("s + t - 1 = {} does not exceed omega' = {omega}", s + t - 1)));
    }

    let mut trace = Vec::new();
    let failed = |mut trace: Vec<TraceStep>, reason: String| {
        trace.push(TraceStep::Failed { reason: reason.clone() });
        Ok(ExtensionOutcome { result: ExtensionResult::Failed { reason }, trace })
    };

    let v = choose_pivot(g)?;
    let degree = g.deg(v);
    trace.push(TraceStep::Pivot { v, degree, neighbors: g.nbrs(v).count() });
    if s > degree {
        return failed(trace, format!("pivot degree {degree} is below s = {s}"));
    }
    let sel = select_s_v(g, v, s)?;
    trace.push(TraceStep::SelectSv {
        s_v: sel.s_v.clone(),
        neighbor_order: sel.neighbor_order.clone(),
        counts: sel.counts.clone(),
    });

    let base = t + ell - 1;
    let residual_graph = g.remove_edges(&sel.s_v)?;
    let Some(residual) = EdgeColorSolver::new(opts.node_limit).color_with(&residual_graph, base)? else {
        return failed(trace, format!("G - S_v is not {base}-edge-colorable"));
    };
    trace.push(TraceStep::ResidualColoring { palette: base, coloring: residual.clone() });
    let missing = missing_colors(g, &residual, v, &Palette::base(base))?;
    trace.push(TraceStep::MissingAtPivot { colors: missing.iter().copied().collect() });

    let mut run = Attempt { g, sel, ell, base, target: s + t - 2, opts, trace };
    for &strategy in &opts.strategies {
        run.trace.push(TraceStep::StrategyStart { strategy });
        if let Some(coloring) = run.strategy(strategy, &residual)? {
            return Ok(run.extended(coloring));
        }
    }
    if let Some(coloring) = run.greedy(&residual) {
        return Ok(run.extended(coloring));
    }
    failed(run.trace, "no strategy produced a matching and greedy completion ran out of colors".into())
}

impl Attempt<'_> {
    fn extended(mut self, coloring: EdgeColoring) -> ExtensionOutcome {
        let colors_used = coloring.colors_used();
        self.trace.push(TraceStep::Extended { colors_used });
        ExtensionOutcome { result: ExtensionResult::Extended { coloring, colors_used }, trace: self.trace }
    }

    fn accept(&self, coloring: &EdgeColoring) -> bool {
        validate(self.g, coloring) && coloring.is_total_for(self.g) && coloring.span() <= self.target
    }

    /// Blocked direct edges, the helper restricted to them, and how many of
    /// them a maximum matching leaves uncovered.
    fn deficiency(&self, phi: &EdgeColoring, split: &PaletteSplit) -> (HelperBipartite, Vec<usize>, usize) {
        let t = build_helper(self.g, phi, split, self.sel.v);
        let blocked = t.blocked_indices();
        let sub = t.restricted(&blocked);
        let d = blocked.len() - matching_size(&sub);
        (t, blocked, d)
    }

    fn strategy(
        &mut self,
        strategy: SplitStrategy,
        residual: &EdgeColoring,
    ) -> Result<Option<EdgeColoring>, EngineError> {
        let split = match split_palette(self.g, &self.sel, self.ell, self.base, residual, strategy) {
            Ok(split) => split,
            Err(e @ (EngineError::Infeasible { .. } | EngineError::TooFewMissing { .. })) => {
                self.trace.push(TraceStep::SplitInfeasible { strategy, reason: e.to_string() });
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        self.trace.push(TraceStep::Split {
            s0: split.s0.clone(),
            reserve: split.reserve.clone(),
            t0: split.t0.clone(),
            c_colors: split.c_colors.clone(),
        });
        let mut phi = residual.clone();
        for &(e, a) in &split.t0 {
            phi.set(e, a);
        }
        self.trace.push(TraceStep::Assign { edges: split.t0.clone() });

        let mut swaps = 0;
        loop {
            let (t, blocked, deficiency) = self.deficiency(&phi, &split);
            self.trace.push(TraceStep::Helper {
                left: t.left.clone(),
                right: t.right.iter().map(|&(e, _)| e).collect(),
                degrees: (0..t.left.len()).map(|i| t.degree(i)).collect(),
                blocked: t.blocked.clone(),
            });
            self.trace.push(TraceStep::Bookkeeping {
                covered_neighbors: self.sel.covered_neighbors().len(),
                missing: missing_colors(self.g, &phi, self.sel.v, &Palette::base(self.base))?.len(),
                blocked: blocked.len(),
                deficiency,
            });
            let sub = t.restricted(&blocked);
            match hall_matching(&sub) {
                HallOutcome::Saturating { pairs } => {
                    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(k, j)| (blocked[k], j)).collect();
                    self.trace.push(TraceStep::Matching {
                        pairs: pairs.iter().map(|&(i, j)| (t.left[i], t.right[j].0)).collect(),
                    });
                    let (out, moved) = apply_matching_repair(self.g, &phi, &t, &pairs)?;
                    let mut changes = moved;
                    changes.extend(t.left.iter().copied().zip(t.left_colors.iter().copied()));
                    self.trace.push(TraceStep::Recolor { changes });
                    if self.accept(&out) {
                        return Ok(Some(out));
                    }
                    return Ok(None);
                }
                HallOutcome::Violating { left } => {
                    let violators: Vec<usize> = left.iter().map(|&k| blocked[k]).collect();
                    self.trace.push(TraceStep::HallViolation { edges: violators.iter().map(|&i| t.left[i]).collect() });
                    if swaps == self.opts.max_kempe_swaps {
                        return Ok(None);
                    }
                    match self.kempe_step(&phi, &split, &t, &violators, (deficiency, blocked.len()))? {
                        Some(next) => {
                            phi = next;
                            swaps += 1;
                        }
                        None => return Ok(None),
                    }
                }
            }
        }
    }

    /// Swaps a `(c_i, β)` chain at the blocked end of a violating direct edge,
    /// keeping the first swap that lowers (deficiency, blocked count).
    fn kempe_step(
        &mut self,
        phi: &EdgeColoring,
        split: &PaletteSplit,
        t: &HelperBipartite,
        violators: &[usize],
        score: (usize, usize),
    ) -> Result<Option<EdgeColoring>, EngineError> {
        let v = self.sel.v;
        let reserved: BTreeSet<Color> = split.c_colors.iter().copied().collect();
        for &i in violators {
            let Some(b) = t.blocked[i] else { continue };
            let c = t.left_colors[i];
            let x = self.g.edge(t.left[i]).unwrap().other(v);
            let z = self.g.edge(b).unwrap().other(x);
            let betas = available_pair_colors(self.g, phi, v, x, z, &Palette::base(self.base));
            for beta in betas.difference(&reserved).copied() {
                let comp = kempe_component(self.g, phi, c, beta, x)?;
                if comp.edge_ids.iter().any(|&e| self.g.edge(e).unwrap().touches(v)) {
                    continue;
                }
                let next = kempe_swap(self.g, phi, &comp)?;
                let (_, blocked, d) = self.deficiency(&next, split);
                if (d, blocked.len()) < score {
                    self.trace.push(TraceStep::KempeSwap {
                        c,
                        alpha: beta,
                        at: x,
                        edges: comp.edge_ids.clone(),
                        shape: comp.shape,
                    });
                    return Ok(Some(next));
                }
            }
        }
        Ok(None)
    }

    /// Colors `S_v` first-fit over the target palette.
    fn greedy(&mut self, residual: &EdgeColoring) -> Option<EdgeColoring> {
        let mut phi = residual.clone();
        let mut changes = Vec::new();
        for &e in &self.sel.s_v {
            let edge = self.g.edge(e).unwrap();
            let used: BTreeSet<Color> =
                phi.colors_at(self.g, edge.u).union(&phi.colors_at(self.g, edge.v)).copied().collect();
            let c = (0..self.target).find(|c| !used.contains(c))?;
            phi.set(e, c);
            changes.push((e, c));
        }
        self.trace.push(TraceStep::GreedyCompletion { changes });
        self.accept(&phi).then_some(phi)
    }
}
