//! `tihany`: chromatic index, ω', clique-removal verification, batch runs
//! and the constructive extension engine from the command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 counterexample candidate
//! found, 3 search budget exhausted.

use std::fs::{self, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tihany_core::chromatic::{ChromaticError, EdgeColorSolver, DEFAULT_NODE_LIMIT};
use tihany_core::harness::{generate, read_edge_list, write_edge_list, FamilySpec};
use tihany_core::proof_engine::{attempt_extension, EngineError, EngineOptions, SplitStrategy};
use tihany_core::tihany::{batch_verify, BatchOptions, Outcome, TihanyError, Verifier};
use tihany_core::Multigraph;

#[derive(Parser)]
#[command(name = "tihany", version, about = "Edge-coloring tools for loopless multigraphs")]
struct Cli {
    /// Search-node budget per solver call.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the chromatic index of an edge-list file.
    ChiIndex { file: PathBuf },
    /// Print ω' = max(τ, Δ), the clique number of the line graph.
    OmegaPrime { file: PathBuf },
    /// Check every admissible (s, t) pair, or one given pair.
    Verify {
        file: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
    },
    /// Verify a whole family, writing one JSON record per (graph, ℓ, s, t).
    Batch {
        /// shannon:K, cycle:N:K, petersen, random:N:MULT:P:SEED[:COUNT], enum[:N:E:M]
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, num_args = 1.., required = true)]
        ell: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Skip graphs listed in the checkpoint and append to the report.
        #[arg(long)]
        resume: bool,
        /// Completed-key file; defaults to the report path with `.ckpt` appended.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, env = "TIHANY_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Stop after this many graphs (a resumable partial run).
        #[arg(long)]
        max_graphs: Option<usize>,
    },
    /// Try to extend a coloring of G - S_v to an (s + t - 2)-coloring; prints JSON.
    Extend {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
        /// Split strategies in the order to try them.
        #[arg(long, value_delimiter = ',', default_values = ["spread", "single", "half"])]
        strategy: Vec<SplitStrategy>,
        #[arg(long, default_value_t = 32)]
        max_kempe_swaps: usize,
    },
    /// Write every graph of a family as a numbered `.el` file.
    Gen {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Smallest s from which every pair s ≤ t has a witness.
    ProbeF {
        file: PathBuf,
        #[arg(long)]
        ell: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<tihany_core::harness::HarnessError> for Failure {
    fn from(e: tihany_core::harness::HarnessError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<ChromaticError> for Failure {
    fn from(e: ChromaticError) -> Self {
        let code = if matches!(e, ChromaticError::BudgetExceeded { .. }) { 3 } else { 1 };
        Self { code, message: e.to_string() }
    }
}

impl From<TihanyError> for Failure {
    fn from(e: TihanyError) -> Self {
        match e {
            TihanyError::Solver(inner) => inner.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Solver(inner) => inner.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Multigraph, Failure> {
    read_edge_list(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limit = cli.node_limit;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::ChiIndex { file } => {
            let g = load(&file)?;
            writeln!(out, "{}", EdgeColorSolver::new(limit).chromatic_index(&g)?)?;
        }
        Command::OmegaPrime { file } => {
            writeln!(out, "{}", load(&file)?.stats().omega_prime)?;
        }
        Command::Verify { file, ell, s, t } => {
            let g = load(&file)?;
            let mut verifier = Verifier::new(limit);
            let chi = verifier.chromatic_index(&g)?;
            let omega = g.stats().omega_prime;
            if chi <= omega {
                writeln!(out, "hypothesis not met: chi' = {chi} <= omega' = {omega}; nothing to verify")?;
                return Ok(0);
            }
            let reports = match (s, t) {
                (Some(s), Some(t)) => {
                    let inst = verifier.instance(g, s, t, ell)?;
                    vec![verifier.verify_instance(&inst)]
                }
                _ => verifier.verify_all_st(&g, ell)?,
            };
            writeln!(out, "chi' = {chi}, omega' = {omega}, ell = {ell}")?;
            if reports.is_empty() {
                writeln!(out, "no admissible (s, t) pairs")?;
            }
            let mut code = 0;
            for r in &reports {
                let (s, t) = (r.instance.s, r.instance.t);
                match &r.outcome {
                    Outcome::Witness { clique, support, chi_prime_after } => writeln!(
                        out,
                        "(s, t) = ({s}, {t}): witness {clique:?} from {}, chi' after removal = {chi_prime_after}",
                        serde_json::to_string(support).expect("serializable support"),
                    )?,
                    Outcome::CounterexampleCandidate => {
                        writeln!(out, "(s, t) = ({s}, {t}): COUNTEREXAMPLE CANDIDATE")?;
                        code = 2;
                    }
                    Outcome::BudgetExceeded => {
                        writeln!(out, "(s, t) = ({s}, {t}): budget exceeded")?;
                        if code == 0 {
                            code = 3;
                        }
                    }
                }
            }
            return Ok(code);
        }
        Command::Batch { family, ell, out: report, resume, checkpoint, workers, max_graphs } => {
            let checkpoint = checkpoint.unwrap_or_else(|| {
                let mut p = report.clone().into_os_string();
                p.push(".ckpt");
                PathBuf::from(p)
            });
            let sink = OpenOptions::new().create(true).write(true).append(resume).truncate(!resume).open(&report)?;
            let opts = BatchOptions {
                ells: ell,
                node_limit: limit,
                workers,
                checkpoint: Some(checkpoint),
                resume,
                max_graphs,
            };
            let summary = batch_verify(generate(&family)?, &opts, &mut BufWriter::new(sink))?;
            writeln!(out, "{}", serde_json::to_string(&summary).expect("serializable summary"))?;
            if summary.counterexample_candidates > 0 {
                return Ok(2);
            }
            if summary.budget_exceeded > 0 {
                return Ok(3);
            }
        }
        Command::Extend { file, s, t, ell, strategy, max_kempe_swaps } => {
            let g = load(&file)?;
            let opts = EngineOptions { strategies: strategy, node_limit: limit, max_kempe_swaps };
            let outcome = attempt_extension(&g, s, t, ell, &opts)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&outcome).expect("serializable outcome"))?;
        }
        Command::Gen { family, out: dir } => {
            fs::create_dir_all(&dir)?;
            let mut count = 0usize;
            for g in generate(&family)? {
                write_edge_list(&dir.join(format!("{count:05}.el")), &g)?;
                count += 1;
            }
            writeln!(out, "wrote {count} graphs to {}", dir.display())?;
        }
        Command::ProbeF { file, ell } => {
            let g = load(&file)?;
            let mut verifier = Verifier::new(limit);
            match verifier.probe_f(&g, ell) {
                Ok(Some(f)) => writeln!(out, "{f}")?,
                Ok(None) => writeln!(out, "none: the most balanced pair has no witness")?,
                Err(TihanyError::HypothesisNotMet { chi, omega }) => {
                    writeln!(out, "hypothesis not met: chi' = {chi} <= omega' = {omega}; nothing to probe")?
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
