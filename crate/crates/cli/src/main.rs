use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qpart::circuit::Benchmark;
use qpart::hypergraph::HgrMode;
use qpart::par::Execution;
use qpart::partitioner::{parse_label_file, Backend};
use qpart::workflow::{run_compare, run_convert, run_partition, CircuitSource, PartitionOutput, RunConfig};

/// Fidelity-aware hypergraph partitioning of quantum circuits.
#[derive(Parser)]
#[command(name = "qpart", version)]
struct Cli {
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the circuit's weighted hypergraph in hMETIS format.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Mode::Raw)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition the circuit and print the partitions and dependency DAG.
    Partition {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the block baseline against the hypergraph partitioner.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Recorded baseline groups (JSON) to replay instead of the block
        /// partitioner.
        #[arg(long)]
        baseline_fixture: Option<PathBuf>,
        /// Waive some repeated SWAP misalignments at random.
        #[arg(long)]
        heuristic: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Circuit text file.
    #[arg(conflicts_with = "bench", required_unless_present = "bench")]
    input: Option<PathBuf>,
    /// Builtin benchmark circuit.
    #[arg(long)]
    bench: Option<Benchmark>,
}

#[derive(Args)]
struct SolverArgs {
    /// Maximum qubits per baseline block; also drives the dynamic k.
    #[arg(long)]
    block_size: Option<usize>,
    /// Number of parts, overriding the dynamic k.
    #[arg(long)]
    k: Option<usize>,
    /// Merge partitions sharing at least this many qubits.
    #[arg(long, value_name = "THRESHOLD")]
    merge: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.05)]
    imbalance: f64,
    /// Independent solver attempts.
    #[arg(long, default_value_t = 8)]
    attempts: usize,
    /// Run the solver attempts on one thread.
    #[arg(long)]
    sequential: bool,
    /// External Mt-KaHyPar-compatible binary.
    #[arg(long, env = "QPART_EXTERNAL_SOLVER")]
    external_solver: Option<PathBuf>,
    /// Threads handed to the external solver.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Balance parts on gate counts rather than gate weights.
    #[arg(long)]
    unit_node_weights: bool,
    /// Replay a label file (one part per gate) instead of solving.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Normalized,
    Standard,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn base_config(input: InputArgs) -> RunConfig {
    let source = match (input.bench, input.input) {
        (Some(b), _) => CircuitSource::Bench(b),
        (None, Some(p)) => CircuitSource::File(p),
        (None, None) => unreachable!("clap requires an input"),
    };
    RunConfig::new(source)
}

fn apply_solver(cfg: &mut RunConfig, s: SolverArgs) -> Result<()> {
    cfg.block_size = s.block_size;
    cfg.k = s.k;
    cfg.merge_threshold = s.merge;
    cfg.seed = s.seed;
    cfg.imbalance = s.imbalance;
    cfg.attempts = s.attempts;
    cfg.unit_node_weights = s.unit_node_weights;
    if s.sequential {
        cfg.execution = Execution::Sequential;
    }
    if let Some(binary) = s.external_solver {
        cfg.backend = Backend::External {
            binary,
            threads: s.threads,
        };
    }
    if let Some(path) = s.labels {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        cfg.labels = Some(parse_label_file(&text)?);
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn partition_json(out: &PartitionOutput) -> String {
    let parts: Vec<_> = out
        .partitions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "index": i,
                "qubit_map": p.qubit_map(),
                "gates": p.origin(),
                "subcircuit": qpart::circuit::serialize_circuit(p.subcircuit()),
            })
        })
        .collect();
    let doc = json!({
        "target_k": out.target_k,
        "labels": out.assignment.labels(),
        "empty_parts": out.empty_parts,
        "partitions": parts,
        "dependencies": out.dag,
        "timings": { "partition_seconds": out.seconds },
    });
    serde_json::to_string_pretty(&doc).expect("json value serializes") + "\n"
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Convert { input, mode, out } => {
            let mut cfg = base_config(input);
            cfg.hgr_mode = match mode {
                Mode::Raw => HgrMode::Raw,
                Mode::Normalized => HgrMode::Normalized,
                Mode::Standard => HgrMode::Standard,
            };
            let conv = run_convert(&cfg)?;
            emit(out.as_ref(), &conv.hgr)?;
            let summary = format!("{} nodes, {} hyperedges", conv.num_nodes, conv.num_edges);
            match out {
                Some(p) => println!("Wrote {} ({summary})", p.display()),
                None => eprintln!("{summary}"),
            }
        }
        Command::Partition {
            input,
            solver,
            format,
            out,
        } => {
            let mut cfg = base_config(input);
            apply_solver(&mut cfg, solver)?;
            let result = run_partition(&cfg)?;
            let text = match format {
                Format::Text => result.to_text(),
                Format::Json => partition_json(&result),
            };
            emit(out.as_ref(), &text)?;
        }
        Command::Compare {
            input,
            solver,
            baseline_fixture,
            heuristic,
            format,
            out,
        } => {
            let mut cfg = base_config(input);
            apply_solver(&mut cfg, solver)?;
            cfg.baseline_fixture = baseline_fixture;
            cfg.heuristic = heuristic;
            let report = run_compare(&cfg)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            emit(out.as_ref(), &text)?;
            if !report.is_valid() {
                eprintln!("error: gate-count validation failed");
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
