mod commands;
mod failure;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::failure::Failure;

/// Pure simplicial complexes and clique complexes: encodings, realizability,
/// reconstruction from facet adjacency, and exact counts.
#[derive(Debug, Parser)]
#[command(name = "purecomplex", version)]
struct Cli {
    /// Worker threads for parallel enumeration (0 = one per core).
    #[arg(long, global = true, env = "PURECOMPLEX_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encodings and verdicts for a complex given as {"facets": [[...], ...]}.
    Analyze {
        /// JSON input file; standard input when omitted or "-".
        input: Option<PathBuf>,
    },
    /// Realizability of an incidence or adjacency matrix given as
    /// {"rows": r, "cols": c, "data": [[...], ...]}.
    CheckMatrix {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MatrixKind::Incidence)]
        kind: MatrixKind,
        /// Largest subset size in the adjacency inequality check.
        #[arg(long)]
        max_subset_size: Option<usize>,
    },
    /// Rebuilds a complex from its facet-adjacency matrix.
    Reconstruct { input: Option<PathBuf> },
    /// Two pure clique complexes that share intersection data up to degree k.
    Counterexample {
        #[arg(long)]
        k: usize,
    },
    /// Exact counts as CSV. Lists such as "1-6" or "2,4" expand to one row per cell.
    Count {
        #[arg(value_enum, default_value_t = Quantity::Pure)]
        quantity: Quantity,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        /// Only with --method oracle.
        #[arg(long, value_enum, default_value_t = FilterArg::None)]
        filter: FilterArg,
        #[arg(long, default_value_t = purecomplex::enumeration::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Lists or counts the p-pure complexes with q facets on [n].
    Enumerate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Vertex counts, e.g. "4" or "3-5"; the full range when omitted.
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum, default_value_t = FilterArg::None)]
        filter: FilterArg,
        #[arg(long, value_enum, default_value_t = Emit::Count)]
        emit: Emit,
        #[arg(long, default_value_t = purecomplex::enumeration::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// A seeded random pure clique complex without triangle intersections.
    Sample {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = purecomplex::enumeration::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
    },
    /// Recomputes the published count tables cell by cell.
    VerifyTables {
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        #[arg(long, default_value_t = purecomplex::enumeration::DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Incidence,
    Adjacency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// s_v(p,q) or, with --n, s_v(p,q,n).
    Pure,
    /// All p-pure complexes on exactly n vertices.
    ByVertices,
    /// f(p,k).
    Alignments,
    /// r(p,q).
    Turan,
    /// Upper bound on pure clique complexes.
    Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Series,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    None,
    Clique,
    CliqueTif,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Jsonl,
    Count,
}

/// Complete standard output and whether the verdict was positive.
struct Outcome {
    payload: String,
    positive: bool,
}

impl Outcome {
    fn ok(payload: String) -> Self {
        Self {
            payload,
            positive: true,
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot start worker pool: {e}")))?;
    match cli.command {
        Command::Analyze { input } => commands::analyze(input.as_deref()),
        Command::CheckMatrix {
            input,
            kind,
            max_subset_size,
        } => commands::check_matrix(input.as_deref(), kind, max_subset_size),
        Command::Reconstruct { input } => commands::reconstruct(input.as_deref()),
        Command::Counterexample { k } => commands::counterexample(k),
        Command::Count {
            quantity,
            p,
            q,
            n,
            k,
            method,
            filter,
            budget,
        } => commands::count(commands::CountArgs {
            quantity,
            p,
            q,
            n,
            k,
            method,
            filter,
            budget,
        }),
        Command::Enumerate {
            p,
            q,
            n,
            filter,
            emit,
            budget,
        } => commands::enumerate(p, q, n.as_deref(), filter, emit, budget),
        Command::Sample {
            p,
            q,
            seed,
            max_attempts,
        } => commands::sample(p, q, seed, max_attempts),
        Command::VerifyTables { method, budget } => tables::verify(method, budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.payload);
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("purecomplex: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
