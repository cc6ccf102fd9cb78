//! Batch verification over a graph stream with JSONL output and
//! canonical-key checkpoints.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{admissible_pairs, Outcome, TihanyError, VerificationInstance, VerificationReport, Verifier};
use crate::chromatic::{ChromaticError, DEFAULT_NODE_LIMIT};
use crate::multigraph::{EdgeId, Multigraph, Vertex};

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub ells: Vec<usize>,
    pub node_limit: u64,
    pub workers: usize,
    /// Completed canonical keys, one per line.
    pub checkpoint: Option<PathBuf>,
    /// Skip graphs already listed in the checkpoint instead of starting over.
    pub resume: bool,
    /// Stop after processing this many graphs in this session.
    pub max_graphs: Option<usize>,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            ells: vec![0],
            node_limit: DEFAULT_NODE_LIMIT,
            workers: 1,
            checkpoint: None,
            resume: false,
            max_graphs: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub graphs_seen: u64,
    pub hypothesis_holds: u64,
    pub witnesses: u64,
    pub counterexample_candidates: u64,
    pub budget_exceeded: u64,
    /// Graphs skipped because their key was already completed.
    pub skipped: u64,
}

/// One JSONL line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub graph_key: String,
    pub edge_list: Vec<(Vertex, Vertex, usize)>,
    pub ell: usize,
    pub s: usize,
    pub t: usize,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_edges: Option<Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_after: Option<usize>,
    pub cliques_tested: u64,
    pub solver_nodes: u64,
    pub ms: u64,
}

impl ReportRecord {
    pub fn from_report(graph_key: &str, report: &VerificationReport) -> Self {
        let inst = &report.instance;
        let (outcome, witness_edges, chi_after) = match &report.outcome {
            Outcome::Witness { clique, chi_prime_after, .. } => {
                ("witness", Some(clique.clone()), Some(*chi_prime_after))
            }
            Outcome::CounterexampleCandidate => ("counterexample_candidate", None, None),
            Outcome::BudgetExceeded => ("budget_exceeded", None, None),
        };
        Self {
            graph_key: graph_key.to_string(),
            edge_list: inst.graph.pair_list(),
            ell: inst.ell,
            s: inst.s,
            t: inst.t,
            outcome: outcome.to_string(),
            witness_edges,
            chi_after,
            cliques_tested: report.cliques_tested,
            solver_nodes: report.solver_nodes,
            ms: report.wall_time.as_millis() as u64,
        }
    }
}

struct GraphResult {
    key: String,
    hypothesis: bool,
    records: Vec<ReportRecord>,
}

fn process(g: &Multigraph, opts: &BatchOptions) -> GraphResult {
    let key = g.canonical_hex();
    let mut v = Verifier::new(opts.node_limit);
    let chi = match v.chromatic_index(g) {
        Ok(chi) => chi,
        Err(ChromaticError::BudgetExceeded { .. }) => {
            // χ' itself is unknown, so no (s, t) can be formed
            let record = ReportRecord {
                graph_key: key.clone(),
                edge_list: g.pair_list(),
                ell: opts.ells.first().copied().unwrap_or(0),
                s: 0,
                t: 0,
                outcome: "budget_exceeded".into(),
                witness_edges: None,
                chi_after: None,
                cliques_tested: 0,
                solver_nodes: v.nodes(),
                ms: 0,
            };
            return GraphResult { key, hypothesis: false, records: vec![record] };
        }
        Err(e) => panic!("solver failure on a valid graph: {e}"),
    };
    let omega = g.stats().omega_prime;
    if chi <= omega {
        return GraphResult { key, hypothesis: false, records: Vec::new() };
    }
    let mut records = Vec::new();
    for &ell in &opts.ells {
        for (s, t) in admissible_pairs(chi, ell) {
            let inst = VerificationInstance { graph: g.clone(), s, t, ell, chi_prime: chi, omega_prime: omega };
            let report = v.verify_instance(&inst);
            records.push(ReportRecord::from_report(&key, &report));
        }
    }
    GraphResult { key, hypothesis: true, records }
}

/// Reads a checkpoint file; a missing file means nothing is done yet.
pub fn load_checkpoint(path: &Path) -> Result<BTreeSet<String>, TihanyError> {
    match File::open(path) {
        Ok(f) => BufReader::new(f)
            .lines()
            .map(|l| l.map(|s| s.trim().to_string()).map_err(TihanyError::from))
            .filter(|l| l.as_ref().map_or(true, |s| !s.is_empty()))
            .collect(),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeSet::new()),
        Err(e) => Err(e.into()),
    }
}

fn write_checkpoint(path: &Path, done: &BTreeSet<String>) -> Result<(), TihanyError> {
    let tmp = path.with_extension("tmp");
    let mut f = File::create(&tmp)?;
    for k in done {
        writeln!(f, "{k}")?;
    }
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Verifies every graph of `source` that satisfies `χ' > ω'` at each `ℓ`
/// in `opts.ells`, writing one JSONL record per report to `sink`.
///
/// Records of a graph are written and flushed before its key is appended to
/// the checkpoint, so a resumed run never loses a graph; at worst a graph
/// interrupted between the two steps is reported twice.
pub fn batch_verify<I, W>(source: I, opts: &BatchOptions, sink: &mut W) -> Result<BatchSummary, TihanyError>
where
    I: IntoIterator<Item = Multigraph>,
    W: Write,
{
    let mut done = match (&opts.checkpoint, opts.resume) {
        (Some(p), true) => load_checkpoint(p)?,
        _ => BTreeSet::new(),
    };
    let mut ckpt = match &opts.checkpoint {
        Some(p) => {
            Some(OpenOptions::new().create(true).append(opts.resume).write(true).truncate(!opts.resume).open(p)?)
        }
        None => None,
    };
    let workers = opts.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| TihanyError::Checkpoint(e.to_string()))?;

    let mut summary = BatchSummary::default();
    let mut source = source.into_iter();
    let chunk_size = workers * 4;
    let mut quota = opts.max_graphs.unwrap_or(usize::MAX);
    'outer: while quota > 0 {
        let mut chunk: Vec<(String, Multigraph)> = Vec::with_capacity(chunk_size);
        let mut pending = BTreeSet::new();
        while chunk.len() < chunk_size.min(quota) {
            let Some(g) = source.next() else { break };
            let key = g.canonical_hex();
            if done.contains(&key) || !pending.insert(key.clone()) {
                summary.skipped += 1;
                continue;
            }
            chunk.push((key, g));
        }
        if chunk.is_empty() {
            break 'outer;
        }
        quota -= chunk.len();
        let results: Vec<GraphResult> = pool.install(|| chunk.par_iter().map(|(_, g)| process(g, opts)).collect());
        for res in results {
            summary.graphs_seen += 1;
            summary.hypothesis_holds += res.hypothesis as u64;
            for r in &res.records {
                match r.outcome.as_str() {
                    "witness" => summary.witnesses += 1,
                    "counterexample_candidate" => summary.counterexample_candidates += 1,
                    _ => summary.budget_exceeded += 1,
                }
                serde_json::to_writer(&mut *sink, r).map_err(std::io::Error::from)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
            if let Some(f) = ckpt.as_mut() {
                writeln!(f, "{}", res.key)?;
                f.flush()?;
            }
            done.insert(res.key);
        }
    }
    drop(ckpt);
    if let Some(p) = &opts.checkpoint {
        write_checkpoint(p, &done)?;
    }
    Ok(summary)
}
