//! Clique-removal verification: for a multigraph `G` with
//! `χ'(G) = s + t - 1 > ω'(G)`, look for an `s`-clique `Q` of L(G) with
//! `χ'(G - Q) ≥ t + ℓ`.

mod batch;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::chromatic::{ChromaticError, EdgeColorSolver};
use crate::linegraph::{cliques_of_size, SupportKind};
use crate::multigraph::{EdgeId, Multigraph};

pub use batch::{batch_verify, load_checkpoint, BatchOptions, BatchSummary, ReportRecord};

#[derive(Debug, Error)]
pub enum TihanyError {
    #[error(transparent)]
    Solver(#[from] ChromaticError),
    #[error("hypothesis not met: chromatic index {chi} does not exceed omega' {omega}")]
    HypothesisNotMet { chi: usize, omega: usize },
    #[error("s + t = {sum} but chromatic index + 1 = {expected}")]
    WrongSum { sum: usize, expected: usize },
    #[error("(s, t) = ({s}, {t}) not admissible at ell = {ell}: need {floor} <= s <= t")]
    NotAdmissible { s: usize, t: usize, ell: usize, floor: usize },
    #[error("report sink: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

/// Smallest admissible `s` (and `t`) at a given `ℓ`: 2 for ℓ = 0, 4 for
/// ℓ = 1, `⌈3.5ℓ + 2⌉` beyond.
pub fn admissible_floor(ell: usize) -> usize {
    match ell {
        0 => 2,
        1 => 4,
        _ => (7 * ell + 4).div_ceil(2),
    }
}

/// `⌈3.5ℓ + 2⌉` for every ℓ, the bound on the probed threshold.
pub fn general_floor(ell: usize) -> usize {
    (7 * ell + 4).div_ceil(2)
}

#[derive(Debug, Clone)]
pub struct VerificationInstance {
    pub graph: Multigraph,
    pub s: usize,
    pub t: usize,
    pub ell: usize,
    chi_prime: usize,
    omega_prime: usize,
}

impl VerificationInstance {
    pub fn chi_prime(&self) -> usize {
        self.chi_prime
    }

    pub fn omega_prime(&self) -> usize {
        self.omega_prime
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Witness { clique: Vec<EdgeId>, support: SupportKind, chi_prime_after: usize },
    CounterexampleCandidate,
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub instance: VerificationInstance,
    pub outcome: Outcome,
    pub cliques_tested: u64,
    pub solver_nodes: u64,
    pub wall_time: Duration,
}

/// Runs verifications with a shared node budget and a memo of coloring
/// decisions keyed by the canonical key of the graph.
pub struct Verifier {
    node_limit: u64,
    solver: EdgeColorSolver,
    memo: HashMap<(Vec<u8>, usize), bool>,
    self_audit: bool,
}

impl Verifier {
    pub fn new(node_limit: u64) -> Self {
        Self { node_limit, solver: EdgeColorSolver::new(node_limit), memo: HashMap::new(), self_audit: true }
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    /// Cumulative solver nodes.
    pub fn nodes(&self) -> u64 {
        self.solver.nodes()
    }

    pub fn chromatic_index(&mut self, g: &Multigraph) -> Result<usize, ChromaticError> {
        self.solver.chromatic_index(g)
    }

    /// Whether `g` has a proper `k`-edge-coloring, memoized up to isomorphism.
    pub fn colorable(&mut self, g: &Multigraph, k: usize) -> Result<bool, ChromaticError> {
        let key = (g.canonical_key(), k);
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let ans = self.solver.color_with(g, k)?.is_some();
        self.memo.insert(key, ans);
        Ok(ans)
    }

    /// Checks the instance hypotheses and builds the instance.
    pub fn instance(
        &mut self,
        graph: Multigraph,
        s: usize,
        t: usize,
        ell: usize,
    ) -> Result<VerificationInstance, TihanyError> {
        let chi = self.chromatic_index(&graph)?;
        let omega = graph.stats().omega_prime;
        Self::check(chi, omega, s, t, ell)?;
        Ok(VerificationInstance { graph, s, t, ell, chi_prime: chi, omega_prime: omega })
    }

    fn check(chi: usize, omega: usize, s: usize, t: usize, ell: usize) -> Result<(), TihanyError> {
        if chi <= omega {
            return Err(TihanyError::HypothesisNotMet { chi, omega });
        }
        if s + t != chi + 1 {
            return Err(TihanyError::WrongSum { sum: s + t, expected: chi + 1 });
        }
        let floor = admissible_floor(ell);
        if s < floor || s > t {
            return Err(TihanyError::NotAdmissible { s, t, ell, floor });
        }
        Ok(())
    }

    /// Streams the `s`-cliques and stops at the first whose removal leaves
    /// no `(t + ℓ - 1)`-coloring.
    pub fn verify_instance(&mut self, inst: &VerificationInstance) -> VerificationReport {
        let report = self.search(inst);
        if report.outcome != Outcome::CounterexampleCandidate || !self.self_audit {
            return report;
        }
        log::error!(
            "counterexample candidate: s={} t={} ell={} chi'={} omega'={} edges={:?}; re-running with doubled budget",
            inst.s,
            inst.t,
            inst.ell,
            inst.chi_prime,
            inst.omega_prime,
            inst.graph.pair_list()
        );
        let mut audit = Verifier::new(self.node_limit.saturating_mul(2));
        audit.self_audit = false;
        let mut again = audit.search(inst);
        log::error!("self-audit outcome: {:?}", again.outcome);
        again.solver_nodes += report.solver_nodes;
        again.cliques_tested += report.cliques_tested;
        again.wall_time += report.wall_time;
        again
    }

    fn search(&mut self, inst: &VerificationInstance) -> VerificationReport {
        let started = Instant::now();
        let nodes_before = self.nodes();
        let target = inst.t + inst.ell;
        let mut tested = 0u64;
        let mut budget_hit = false;
        let mut outcome = None;
        for clique in cliques_of_size(&inst.graph, inst.s) {
            tested += 1;
            let rest = inst.graph.remove_edges(&clique.edge_ids).expect("clique edges belong to the graph");
            match self.colorable(&rest, target - 1) {
                Ok(true) => {}
                Ok(false) => {
                    let after = self.solver.chromatic_index(&rest).unwrap_or(target);
                    outcome = Some(Outcome::Witness {
                        clique: clique.edge_ids,
                        support: clique.support,
                        chi_prime_after: after,
                    });
                    break;
                }
                Err(ChromaticError::BudgetExceeded { .. }) => budget_hit = true,
                Err(e) => panic!("solver failure on a valid residual graph: {e}"),
            }
        }
        let outcome =
            outcome.unwrap_or(if budget_hit { Outcome::BudgetExceeded } else { Outcome::CounterexampleCandidate });
        VerificationReport {
            instance: inst.clone(),
            outcome,
            cliques_tested: tested,
            solver_nodes: self.nodes() - nodes_before,
            wall_time: started.elapsed(),
        }
    }

    /// One report per admissible `(s, t)` with `s ≤ t` and
    /// `s + t = χ'(G) + 1`.
    pub fn verify_all_st(&mut self, g: &Multigraph, ell: usize) -> Result<Vec<VerificationReport>, TihanyError> {
        let chi = self.chromatic_index(g)?;
        let omega = g.stats().omega_prime;
        if chi <= omega {
            return Err(TihanyError::HypothesisNotMet { chi, omega });
        }
        let mut out = Vec::new();
        for (s, t) in admissible_pairs(chi, ell) {
            let inst = VerificationInstance { graph: g.clone(), s, t, ell, chi_prime: chi, omega_prime: omega };
            out.push(self.verify_instance(&inst));
        }
        Ok(out)
    }

    /// Least `b` such that every pair `b ≤ s ≤ t`, `s + t = χ'(G) + 1`, has a
    /// witness, ignoring the admissibility floor (`s ≥ 1` only). `None` if the
    /// most balanced pair already fails.
    pub fn probe_f(&mut self, g: &Multigraph, ell: usize) -> Result<Option<usize>, TihanyError> {
        let chi = self.chromatic_index(g)?;
        let omega = g.stats().omega_prime;
        if chi <= omega {
            return Err(TihanyError::HypothesisNotMet { chi, omega });
        }
        let s_max = chi.div_ceil(2);
        let mut best = None;
        for s in (1..=s_max).rev() {
            let t = chi + 1 - s;
            let inst = VerificationInstance { graph: g.clone(), s, t, ell, chi_prime: chi, omega_prime: omega };
            match self.search(&inst).outcome {
                Outcome::Witness { .. } => best = Some(s),
                Outcome::CounterexampleCandidate => break,
                Outcome::BudgetExceeded => return Err(ChromaticError::BudgetExceeded { limit: self.node_limit }.into()),
            }
        }
        Ok(best)
    }
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(crate::chromatic::DEFAULT_NODE_LIMIT)
    }
}

/// Admissible `(s, t)` with `s ≤ t` and `s + t = chi + 1`.
pub fn admissible_pairs(chi: usize, ell: usize) -> Vec<(usize, usize)> {
    let floor = admissible_floor(ell);
    (floor..).map(|s| (s, (chi + 1).saturating_sub(s))).take_while(|&(s, t)| s <= t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linegraph::build_line_graph;

    fn cycle(n: usize, k: usize) -> Multigraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, k)).collect();
        Multigraph::from_edge_list(&pairs).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut pairs: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        pairs.extend((0..5).map(|i| (i, i + 5)));
        pairs.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Multigraph::from_pairs(10, &pairs).unwrap()
    }

    fn assert_sound(report: &VerificationReport) {
        let inst = &report.instance;
        let Outcome::Witness { clique, chi_prime_after, .. } = &report.outcome else {
            panic!("expected a witness, got {:?}", report.outcome);
        };
        assert_eq!(clique.len(), inst.s);
        let h = build_line_graph(&inst.graph);
        let idx: Vec<usize> =
            clique.iter().map(|id| inst.graph.edges().iter().position(|e| e.id == *id).unwrap()).collect();
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                assert!(h.adjacent(a, b));
            }
        }
        assert!(*chi_prime_after >= inst.t + inst.ell);
        let rest = inst.graph.remove_edges(clique).unwrap();
        assert!(EdgeColorSolver::default().color_with(&rest, inst.t + inst.ell - 1).unwrap().is_none());
    }

    #[test]
    fn floors() {
        assert_eq!(admissible_floor(0), 2);
        assert_eq!(admissible_floor(1), 4);
        assert_eq!(admissible_floor(2), 9);
        assert_eq!(admissible_floor(3), 13);
        assert_eq!(general_floor(1), 6);
    }

    #[test]
    fn instance_examples() {
        let mut v = Verifier::default();
        let inst = v.instance(cycle(5, 2), 2, 4, 0).unwrap();
        assert_eq!((inst.chi_prime(), inst.omega_prime()), (5, 4));
        assert_sound(&v.verify_instance(&inst));

        let inst = v.instance(cycle(5, 3), 4, 5, 1).unwrap();
        assert_eq!((inst.chi_prime(), inst.omega_prime()), (8, 6));
        let rep = v.verify_instance(&inst);
        assert_sound(&rep);
        assert!(matches!(rep.outcome, Outcome::Witness { support: SupportKind::Star { .. }, .. }));

        let inst = v.instance(petersen(), 2, 3, 0).unwrap();
        assert_eq!((inst.chi_prime(), inst.omega_prime()), (4, 3));
        assert_sound(&v.verify_instance(&inst));
    }

    #[test]
    fn instance_rejections() {
        let mut v = Verifier::default();
        let k4 = Multigraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(v.instance(k4, 2, 2, 0), Err(TihanyError::HypothesisNotMet { chi: 3, omega: 3 })));
        assert!(matches!(v.instance(cycle(5, 2), 2, 3, 0), Err(TihanyError::WrongSum { .. })));
        assert!(matches!(v.instance(cycle(5, 2), 4, 2, 0), Err(TihanyError::NotAdmissible { .. })));
        assert!(matches!(v.instance(cycle(5, 2), 2, 4, 1), Err(TihanyError::NotAdmissible { .. })));
    }

    #[test]
    fn all_pairs_examples() {
        let mut v = Verifier::default();
        let reps = v.verify_all_st(&cycle(5, 2), 0).unwrap();
        let pairs: Vec<_> = reps.iter().map(|r| (r.instance.s, r.instance.t)).collect();
        assert_eq!(pairs, vec![(2, 4), (3, 3)]);
        reps.iter().for_each(assert_sound);

        let reps = v.verify_all_st(&cycle(5, 3), 1).unwrap();
        let pairs: Vec<_> = reps.iter().map(|r| (r.instance.s, r.instance.t)).collect();
        assert_eq!(pairs, vec![(4, 5)]);

        assert!(v.verify_all_st(&cycle(5, 2), 1).unwrap().is_empty());
        let tri = Multigraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(v.verify_all_st(&tri, 0), Err(TihanyError::HypothesisNotMet { .. })));
    }

    #[test]
    fn probe_examples() {
        let mut v = Verifier::default();
        let b = v.probe_f(&cycle(5, 2), 0).unwrap().unwrap();
        assert!(b <= 2);
        let b = v.probe_f(&cycle(5, 3), 1).unwrap().unwrap();
        assert!(b <= 4);
    }

    #[test]
    fn probe_is_minimal() {
        let mut v = Verifier::default();
        for g in [cycle(5, 2), cycle(5, 3), cycle(7, 2), petersen()] {
            for ell in 0..=2 {
                let chi = v.chromatic_index(&g).unwrap();
                let Some(b) = v.probe_f(&g, ell).unwrap() else { continue };
                if b >= 2 {
                    let (s, t) = (b - 1, chi + 2 - b);
                    let inst = VerificationInstance {
                        graph: g.clone(),
                        s,
                        t,
                        ell,
                        chi_prime: chi,
                        omega_prime: g.stats().omega_prime,
                    };
                    assert_eq!(v.search(&inst).outcome, Outcome::CounterexampleCandidate);
                }
            }
        }
    }

    #[test]
    fn pairs_enumeration() {
        assert_eq!(admissible_pairs(5, 0), vec![(2, 4), (3, 3)]);
        assert_eq!(admissible_pairs(8, 1), vec![(4, 5)]);
        assert!(admissible_pairs(5, 1).is_empty());
        assert_eq!(admissible_pairs(3, 0), vec![(2, 2)]);
    }
}
