//! End-to-end runs shared by the command-line front end and the tests.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::baseline::{block_partition, load_fixture, remap_groups, BaselineConfig, BaselineError};
use crate::circuit::{parse_circuit, Benchmark, Circuit, CircuitError};
use crate::hypergraph::{circuit_to_hypergraph, normalize_weights, write_hgr, HgrMode};
use crate::metrics::{build_report, render_partition, ComparisonReport, MethodRun, ReportOptions};
use crate::noise::{ErrorModel, InvalidErrorModel};
use crate::par::Execution;
use crate::partitioner::{dynamic_k, partition, Backend, PartitionAssignment, PartitionError, SolverConfig};
use crate::pipeline::{
    build_dependency_graph, create_trimmed_partitions, merge_partitions, DependencyDag, Partition, PipelineError,
};

pub const BASELINE_METHOD: &str = "baseline";
pub const HYPERGRAPH_METHOD: &str = "hypergraph";

#[derive(Debug, Error)]
pub enum WorkflowError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid circuit in {path}")]
    Circuit {
        path: PathBuf,
        #[source]
        source: CircuitError,
    },
    #[error("a block size is required when neither a builtin benchmark nor an explicit k is given")]
    MissingBlockSize,
    #[error("merge threshold must be at least 1")]
    ZeroThreshold,
    #[error(transparent)]
    Model(#[from] InvalidErrorModel),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitSource {
    Bench(Benchmark),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: CircuitSource,
    /// Defaults to the benchmark's own block size for builtin circuits.
    pub block_size: Option<usize>,
    /// Overrides the dynamic k when set.
    pub k: Option<usize>,
    /// Merge qubit-sharing partitions with at least this many shared qubits.
    pub merge_threshold: Option<usize>,
    pub seed: u64,
    pub imbalance: f64,
    pub attempts: usize,
    pub backend: Backend,
    pub execution: Execution,
    pub heuristic: bool,
    /// Balance on gate counts instead of gate weights.
    pub unit_node_weights: bool,
    pub hgr_mode: HgrMode,
    pub model: ErrorModel,
    /// Replays a recorded label vector instead of running the solver.
    pub labels: Option<Vec<usize>>,
    /// Replays recorded baseline groups instead of running the block
    /// partitioner.
    pub baseline_fixture: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: CircuitSource) -> Self {
        RunConfig {
            source,
            block_size: None,
            k: None,
            merge_threshold: None,
            seed: 42,
            imbalance: 0.05,
            attempts: 8,
            backend: Backend::Internal,
            execution: Execution::Parallel,
            heuristic: false,
            unit_node_weights: false,
            hgr_mode: HgrMode::Raw,
            model: ErrorModel::default(),
            labels: None,
            baseline_fixture: None,
        }
    }

    pub fn circuit_name(&self) -> String {
        match &self.source {
            CircuitSource::Bench(b) => format!("Circuit {}", b.to_string().to_uppercase()),
            CircuitSource::File(p) => p
                .file_stem()
                .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()),
        }
    }

    pub fn load_circuit(&self) -> Result<Circuit, WorkflowError> {
        match &self.source {
            CircuitSource::Bench(b) => Ok(b.circuit()),
            CircuitSource::File(p) => {
                let text = read(p)?;
                parse_circuit(&text).map_err(|source| WorkflowError::Circuit {
                    path: p.clone(),
                    source,
                })
            }
        }
    }

    pub fn effective_block_size(&self) -> Option<usize> {
        self.block_size.or(match self.source {
            CircuitSource::Bench(b) => Some(b.block_size()),
            CircuitSource::File(_) => None,
        })
    }

    pub fn target_k(&self, circuit: &Circuit) -> Result<usize, WorkflowError> {
        if let Some(k) = self.k {
            return Ok(k);
        }
        let bs = self.effective_block_size().ok_or(WorkflowError::MissingBlockSize)?;
        if bs == 0 {
            return Err(BaselineError::ZeroBlockSize.into());
        }
        Ok(dynamic_k(circuit.len(), circuit.num_qubits(), bs))
    }

    fn solver_config(&self, k: usize) -> SolverConfig {
        SolverConfig {
            k,
            imbalance: self.imbalance,
            seed: self.seed,
            backend: self.backend.clone(),
            attempts: self.attempts,
            execution: self.execution,
        }
    }
}

fn read(path: &Path) -> Result<String, WorkflowError> {
    fs::read_to_string(path).map_err(|source| WorkflowError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct ConvertOutput {
    pub hgr: String,
    pub num_nodes: usize,
    pub num_edges: usize,
}

pub fn run_convert(config: &RunConfig) -> Result<ConvertOutput, WorkflowError> {
    config.model.validate()?;
    let circuit = config.load_circuit()?;
    let hg = circuit_to_hypergraph(&circuit, &config.model);
    Ok(ConvertOutput {
        hgr: write_hgr(&hg, config.hgr_mode),
        num_nodes: hg.num_nodes(),
        num_edges: hg.num_edges(),
    })
}

#[derive(Debug, Clone)]
pub struct PartitionOutput {
    pub target_k: usize,
    pub assignment: PartitionAssignment,
    pub partitions: Vec<Partition>,
    pub empty_parts: Vec<usize>,
    pub dag: DependencyDag,
    pub seconds: f64,
}

impl PartitionOutput {
    pub fn to_text(&self) -> String {
        let mut s = format!("Target k: {}\nPartitions: {}\n\n", self.target_k, self.partitions.len());
        for p in &self.empty_parts {
            s.push_str(&format!("warning: partition {p} is empty\n"));
        }
        for (i, p) in self.partitions.iter().enumerate() {
            s.push_str(&render_partition(i, p));
            s.push('\n');
        }
        s.push_str(&self.dag.to_string());
        s
    }
}

/// Circuit -> hypergraph -> labels -> trimmed (and optionally merged)
/// partitions -> dependency DAG.
pub fn run_partition(config: &RunConfig) -> Result<PartitionOutput, WorkflowError> {
    config.model.validate()?;
    let circuit = config.load_circuit()?;
    run_partition_on(config, &circuit)
}

fn run_partition_on(config: &RunConfig, circuit: &Circuit) -> Result<PartitionOutput, WorkflowError> {
    if config.merge_threshold == Some(0) {
        return Err(WorkflowError::ZeroThreshold);
    }
    let target_k = config.target_k(circuit)?;
    let start = Instant::now();
    let assignment = match &config.labels {
        Some(labels) => {
            let k = labels.iter().max().map_or(1, |m| m + 1).max(target_k);
            PartitionAssignment::new(labels.clone(), k)?
        }
        None => {
            let mut hg = normalize_weights(&circuit_to_hypergraph(circuit, &config.model));
            if config.unit_node_weights {
                hg = hg.with_unit_node_weights();
            }
            partition(&hg, &config.solver_config(target_k))?
        }
    };
    let trimmed = create_trimmed_partitions(circuit, &assignment)?;
    let partitions = match config.merge_threshold {
        Some(t) => merge_partitions(trimmed.partitions, t),
        None => trimmed.partitions,
    };
    let seconds = start.elapsed().as_secs_f64();
    let dag = build_dependency_graph(&partitions);
    Ok(PartitionOutput {
        target_k,
        assignment,
        partitions,
        empty_parts: trimmed.empty_parts,
        dag,
        seconds,
    })
}

/// Runs the baseline and the hypergraph path on the same circuit and
/// assembles the comparison report.
pub fn run_compare(config: &RunConfig) -> Result<ComparisonReport, WorkflowError> {
    config.model.validate()?;
    let circuit = config.load_circuit()?;
    let block_size = config.effective_block_size();

    let start = Instant::now();
    let groups = match &config.baseline_fixture {
        Some(path) => load_fixture(&read(path)?, &circuit)?,
        None => {
            let bs = block_size.ok_or(WorkflowError::MissingBlockSize)?;
            block_partition(&circuit, BaselineConfig::new(bs)?)?
        }
    };
    let baseline = remap_groups(&circuit, &groups)?;
    let baseline_secs = start.elapsed().as_secs_f64();

    let hyper = run_partition_on(config, &circuit)?;

    let opts = ReportOptions {
        circuit_name: config.circuit_name(),
        block_size,
        heuristic: config.heuristic,
        seed: config.seed,
        model: config.model,
    };
    Ok(build_report(
        &circuit,
        MethodRun {
            method: BASELINE_METHOD,
            partitions: &baseline,
            target_k: None,
            seconds: baseline_secs,
        },
        MethodRun {
            method: HYPERGRAPH_METHOD,
            partitions: &hyper.partitions,
            target_k: Some(hyper.target_k),
            seconds: hyper.seconds,
        },
        &opts,
    ))
}
