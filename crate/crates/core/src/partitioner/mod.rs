//! k-way hypergraph partitioning under the connectivity (km1) objective.
//!
//! The internal backend is a deterministic multilevel solver: heavy-edge
//! coarsening, recursive-bisection initial partitioning, and k-way FM
//! refinement on every level. Several independent V-cycles run per call
//! (in parallel when enabled) and the best balanced result wins, ties going
//! to the lowest attempt index. The external backend shells out to an
//! hMETIS-compatible solver binary.

mod coarsen;
mod external;
mod graph;
mod initial;
mod refine;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{normalize_weights, Hypergraph};
use crate::par::{self, Execution};
use crate::rng::SplitMix64;

pub use external::{parse_label_file, write_label_file};
use graph::SolverGraph;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("cannot split {num_nodes} nodes into {k} parts")]
    TooManyParts { k: usize, num_nodes: usize },
    #[error("k must be at least 1")]
    ZeroParts,
    #[error("no assignment satisfies the balance constraint (imbalance {imbalance})")]
    NoBalancedSolution { imbalance: f64 },
    #[error("{expected} labels expected, {found} given")]
    LabelCountMismatch { expected: usize, found: usize },
    #[error("label {label} at position {index} is not below k = {k}")]
    LabelOutOfRange { index: usize, label: usize, k: usize },
    #[error("line {line}: invalid partition label `{text}`")]
    BadLabel { line: usize, text: String },
    #[error("Mt-KaHyPar failed: {0}")]
    ExternalFailed(String),
    #[error("Partition file not found: {0}")]
    MissingPartitionFile(PathBuf),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One part index per node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionAssignment {
    labels: Vec<usize>,
    k: usize,
}

impl PartitionAssignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self, PartitionError> {
        if k == 0 {
            return Err(PartitionError::ZeroParts);
        }
        if let Some((index, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= k) {
            return Err(PartitionError::LabelOutOfRange { index, label, k });
        }
        Ok(PartitionAssignment { labels, k })
    }

    /// Infers `k` as one past the largest label.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let k = labels.iter().max().map_or(1, |m| m + 1);
        PartitionAssignment { labels, k }
    }

    /// Renames parts in order of first appearance, so node 0 is always in
    /// part 0. Unused part ids keep the highest numbers.
    pub fn canonical(&self) -> PartitionAssignment {
        let mut rename = vec![usize::MAX; self.k];
        let mut next = 0;
        for &l in &self.labels {
            if rename[l] == usize::MAX {
                rename[l] = next;
                next += 1;
            }
        }
        PartitionAssignment {
            labels: self.labels.iter().map(|&l| rename[l]).collect(),
            k: self.k,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Internal,
    External { binary: PathBuf, threads: usize },
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub k: usize,
    pub imbalance: f64,
    pub seed: u64,
    pub backend: Backend,
    /// Independent V-cycles per internal solve.
    pub attempts: usize,
    pub execution: Execution,
}

impl SolverConfig {
    pub fn new(k: usize) -> Self {
        SolverConfig {
            k,
            imbalance: 0.05,
            seed: 42,
            backend: Backend::Internal,
            attempts: 8,
            execution: Execution::Parallel,
        }
    }
}

/// `max(2, min(floor(ops / block), floor(sqrt(qubits))))`.
pub fn dynamic_k(num_ops: usize, num_qubits: usize, block_size: usize) -> usize {
    assert!(block_size >= 1, "block size must be positive");
    let by_ops = num_ops / block_size;
    let by_qubits = num_qubits.isqrt();
    by_ops.min(by_qubits).max(2)
}

/// Sum over hyperedges of `w(e) * (lambda(e) - 1)`, with integer weights.
pub fn km1(hg: &Hypergraph, assignment: &PartitionAssignment) -> u64 {
    km1_with(hg, assignment, Execution::Parallel)
}

pub fn km1_with(hg: &Hypergraph, assignment: &PartitionAssignment, exec: Execution) -> u64 {
    let labels = assignment.labels();
    par::sum_u64(exec, hg.edges(), |e| {
        let mut parts: Vec<usize> = e.pins.iter().map(|&p| labels[p]).collect();
        parts.sort_unstable();
        parts.dedup();
        e.int_weight() * (parts.len() as u64 - 1)
    })
}

/// Upper bound on a part's node weight: `(1 + imbalance) * ceil(total / k)`.
pub fn max_part_weight(total: u64, k: usize, imbalance: f64) -> f64 {
    (1.0 + imbalance) * total.div_ceil(k as u64) as f64
}

pub fn part_weights(hg: &Hypergraph, assignment: &PartitionAssignment) -> Vec<u64> {
    let mut w = vec![0u64; assignment.k()];
    for (nw, &l) in hg.int_node_weights().iter().zip(assignment.labels()) {
        w[l] += nw;
    }
    w
}

pub fn check_balance(hg: &Hypergraph, assignment: &PartitionAssignment, imbalance: f64) -> bool {
    let total: u64 = hg.int_node_weights().iter().sum();
    let cap = max_part_weight(total, assignment.k(), imbalance);
    part_weights(hg, assignment).iter().all(|&w| w as f64 <= cap)
}

/// Visits nodes by descending weight, shuffled by the seeded PRNG within
/// equal weights, and drops each into the currently lightest part (lowest
/// index on ties).
pub fn random_balanced_assignment(hg: &Hypergraph, k: usize, seed: u64) -> PartitionAssignment {
    let weights = hg.int_node_weights();
    PartitionAssignment {
        labels: graph::random_balanced(&weights, k, &mut SplitMix64::new(seed)),
        k,
    }
}

/// Partitions the hypergraph as given. Callers wanting the normalized
/// weighting should pass [`normalize_weights`]'s output, or use
/// [`partition_normalized`].
pub fn partition(hg: &Hypergraph, config: &SolverConfig) -> Result<PartitionAssignment, PartitionError> {
    if config.k == 0 {
        return Err(PartitionError::ZeroParts);
    }
    match &config.backend {
        Backend::Internal => partition_internal(hg, config),
        Backend::External { binary, threads } => external::run(hg, config, binary, *threads),
    }
}

pub fn partition_normalized(hg: &Hypergraph, config: &SolverConfig) -> Result<PartitionAssignment, PartitionError> {
    partition(&normalize_weights(hg), config)
}

fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    let mut r = SplitMix64::new(seed ^ (attempt as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
    r.next_u64()
}

fn partition_internal(hg: &Hypergraph, config: &SolverConfig) -> Result<PartitionAssignment, PartitionError> {
    let n = hg.num_nodes();
    let k = config.k;
    if k > n {
        return Err(PartitionError::TooManyParts { k, num_nodes: n });
    }
    if k == 1 {
        return Ok(PartitionAssignment { labels: vec![0; n], k });
    }

    let g = SolverGraph::from_hypergraph(hg);
    let cap = max_part_weight(g.total_weight(), k, config.imbalance);

    let attempts = config.attempts.max(1);
    let results = par::map_range(config.execution, attempts, |a| {
        let mut rng = SplitMix64::new(attempt_seed(config.seed, a));
        let labels = if a == 0 {
            // The seeded random assignment, refined in place.
            let mut labels = graph::random_balanced(&g.node_w, k, &mut SplitMix64::new(config.seed));
            refine::rebalance(&g, &mut labels, k, cap);
            refine::fm_refine(&g, &mut labels, k, cap);
            labels
        } else {
            v_cycle(&g, k, config.imbalance, cap, &mut rng)
        };
        let balanced = g.part_weights(&labels, k).iter().all(|&w| w as f64 <= cap);
        let cost = g.km1(&labels, k);
        (balanced, cost, labels)
    });

    let best = results
        .into_iter()
        .enumerate()
        .filter(|(_, (balanced, _, _))| *balanced)
        .min_by_key(|(a, (_, cost, _))| (*cost, *a));

    match best {
        Some((a, (_, cost, labels))) => {
            log::debug!("internal solver: attempt {a} wins with km1 {cost}");
            Ok(PartitionAssignment { labels, k }.canonical())
        }
        None => Err(PartitionError::NoBalancedSolution {
            imbalance: config.imbalance,
        }),
    }
}

fn v_cycle(g: &SolverGraph, k: usize, imbalance: f64, cap: f64, rng: &mut SplitMix64) -> Vec<usize> {
    let levels = coarsen::coarsen(g, k, cap, rng);
    let coarsest = levels.last().map_or(g, |l| &l.graph);

    let mut labels = initial::recursive_bisection(coarsest, k, imbalance, rng);
    refine::rebalance(coarsest, &mut labels, k, cap);
    refine::fm_refine(coarsest, &mut labels, k, cap);

    for i in (0..levels.len()).rev() {
        let finer = if i == 0 { g } else { &levels[i - 1].graph };
        labels = levels[i].project(&labels);
        refine::rebalance(finer, &mut labels, k, cap);
        refine::fm_refine(finer, &mut labels, k, cap);
    }
    labels
}
