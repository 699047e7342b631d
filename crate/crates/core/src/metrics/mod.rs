//! Cut qubits, SWAP realignment estimates, fidelity and gate-count checks
//! over a set of partitions.

mod report;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::noise::ErrorModel;
use crate::pipeline::{shared_qubits, Partition};
use crate::rng::SplitMix64;

pub use report::{
    build_report, render_partition, ComparisonReport, MethodRun, MethodSummary, PartitionMetrics, ReportOptions,
};

/// Misalignments a qubit may accumulate before the waiver heuristic applies.
pub const WAIVER_AFTER: usize = 3;
/// Probability that a misalignment past the threshold is waived.
pub const WAIVER_PROBABILITY: f64 = 0.6;

/// Global qubits present in at least two partitions.
pub fn cut_qubits(parts: &[Partition]) -> BTreeSet<usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for p in parts {
        for &q in p.qubit_map().keys() {
            *seen.entry(q).or_default() += 1;
        }
    }
    seen.into_iter().filter(|&(_, n)| n >= 2).map(|(q, _)| q).collect()
}

/// Non-empty shared qubit sets for every pair `i < j`.
pub fn pairwise_cuts(parts: &[Partition]) -> BTreeMap<(usize, usize), BTreeSet<usize>> {
    let mut out = BTreeMap::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let s = shared_qubits(parts[i].qubit_map(), parts[j].qubit_map());
            if !s.is_empty() {
                out.insert((i, j), s);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapEstimate {
    pub total: usize,
    /// SWAPs charged per sharing pair; pairs without shared qubits are absent.
    pub per_pair: BTreeMap<(usize, usize), usize>,
    /// Charged to the lower index of each pair.
    pub per_partition_attribution: Vec<usize>,
    pub waived: usize,
}

/// One SWAP per shared qubit whose local index differs between the two
/// partitions. Pairs are visited lexicographically and shared qubits in
/// ascending order. With `heuristic`, once a qubit has been misaligned more
/// than [`WAIVER_AFTER`] times, each further misalignment is waived with
/// probability [`WAIVER_PROBABILITY`]. Waived misalignments still count
/// toward the qubit's tally.
pub fn estimate_swaps(parts: &[Partition], heuristic: bool, seed: u64) -> SwapEstimate {
    let mut rng = SplitMix64::new(seed);
    let mut tally: HashMap<usize, usize> = HashMap::new();
    let mut est = SwapEstimate {
        total: 0,
        per_pair: BTreeMap::new(),
        per_partition_attribution: vec![0; parts.len()],
        waived: 0,
    };
    for ((i, j), shared) in pairwise_cuts(parts) {
        let (mi, mj) = (parts[i].qubit_map(), parts[j].qubit_map());
        let mut charged = 0;
        for q in shared {
            if mi[&q] == mj[&q] {
                continue;
            }
            let n = tally.entry(q).or_default();
            *n += 1;
            if heuristic && *n > WAIVER_AFTER && rng.next_f64() < WAIVER_PROBABILITY {
                est.waived += 1;
            } else {
                charged += 1;
            }
        }
        est.per_pair.insert((i, j), charged);
        est.per_partition_attribution[i] += charged;
        est.total += charged;
    }
    debug_assert_eq!(est.per_partition_attribution.iter().sum::<usize>(), est.total);
    est
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub h: usize,
    pub cnot: usize,
    /// SWAP gates written in the circuit itself.
    pub swap: usize,
    pub ccx: usize,
    pub other_single: usize,
    /// CNOT equivalents of other multi-qubit gates, `arity - 1` each.
    pub other_multi_cnots: usize,
}

impl GateCounts {
    pub fn of(circuit: &Circuit) -> Self {
        let mut c = GateCounts::default();
        for g in circuit.gates() {
            match g.kind() {
                GateKind::H => c.h += 1,
                GateKind::Cnot => c.cnot += 1,
                GateKind::Swap => c.swap += 1,
                GateKind::Ccx => c.ccx += 1,
                GateKind::Other { arity: 1, .. } => c.other_single += 1,
                GateKind::Other { arity, .. } => c.other_multi_cnots += arity - 1,
            }
        }
        c
    }
}

/// Product of per-gate success probabilities, with every SWAP (estimated or
/// written) charged as three CNOTs and every CCX as
/// `model.ccx_cnot_equivalents` CNOTs.
pub fn fidelity(counts: &GateCounts, estimated_swaps: usize, model: &ErrorModel) -> f64 {
    let cnots = counts.cnot
        + 3 * (estimated_swaps + counts.swap)
        + model.ccx_cnot_equivalents as usize * counts.ccx
        + counts.other_multi_cnots;
    let log = counts.h as f64 * (-model.eps_h).ln_1p()
        + cnots as f64 * (-model.eps_cnot).ln_1p()
        + counts.other_single as f64 * (-model.eps_default_single).ln_1p();
    log.exp()
}

pub fn total_fidelity(per_partition: &[f64]) -> f64 {
    per_partition.iter().product()
}

/// True iff the partitions, translated back to global qubits, hold exactly
/// the original multiset of gates.
pub fn validate_gate_counts(original: &Circuit, parts: &[Partition]) -> bool {
    let mut counts: HashMap<Gate, isize> = HashMap::new();
    for g in original.gates() {
        *counts.entry(g.clone()).or_default() += 1;
    }
    for p in parts {
        for g in p.global_gates() {
            *counts.entry(g).or_default() -= 1;
        }
    }
    counts.values().all(|&n| n == 0)
}
