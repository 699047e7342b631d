use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{cut_qubits, estimate_swaps, fidelity, pairwise_cuts, total_fidelity, validate_gate_counts, GateCounts};
use crate::circuit::{Circuit, GateKind};
use crate::noise::ErrorModel;
use crate::pipeline::{dag::fmt_set, Partition, QubitMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionMetrics {
    pub index: usize,
    pub qubit_map: QubitMap,
    pub gate_count: usize,
    pub depth: usize,
    pub h_count: usize,
    pub cnot_count: usize,
    pub swap_attributed: usize,
    pub fidelity: f64,
    pub error_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSwaps {
    pub a: usize,
    pub b: usize,
    pub shared: Vec<usize>,
    pub swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: String,
    pub target_k: Option<usize>,
    pub actual_k: usize,
    pub cut_qubits: Vec<usize>,
    pub pairs: Vec<PairSwaps>,
    pub swaps: usize,
    pub swaps_waived: usize,
    pub fidelity: f64,
    pub max_depth: usize,
    pub gate_counts_valid: bool,
    pub partitions: Vec<PartitionMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub circuit: String,
    pub qubits: usize,
    pub gates: usize,
    pub block_size: Option<usize>,
    pub heuristic: bool,
    pub seed: u64,
    pub methods: Vec<MethodSummary>,
    /// Wall-clock seconds per method. Never part of determinism checks.
    pub timings: BTreeMap<String, f64>,
}

pub struct MethodRun<'a> {
    pub method: &'a str,
    pub partitions: &'a [Partition],
    pub target_k: Option<usize>,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub circuit_name: String,
    pub block_size: Option<usize>,
    pub heuristic: bool,
    pub seed: u64,
    pub model: ErrorModel,
}

fn summarize(original: &Circuit, run: &MethodRun<'_>, opts: &ReportOptions) -> MethodSummary {
    let parts = run.partitions;
    let swaps = estimate_swaps(parts, opts.heuristic, opts.seed);
    let rows: Vec<PartitionMetrics> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let counts = GateCounts::of(p.subcircuit());
            let attributed = swaps.per_partition_attribution[i];
            let f = fidelity(&counts, attributed, &opts.model);
            PartitionMetrics {
                index: i,
                qubit_map: p.qubit_map().clone(),
                gate_count: p.len(),
                depth: p.subcircuit().depth(),
                h_count: counts.h,
                cnot_count: counts.cnot,
                swap_attributed: attributed,
                fidelity: f,
                error_rate: 1.0 - f,
            }
        })
        .collect();
    let pairs = pairwise_cuts(parts)
        .into_iter()
        .map(|((a, b), shared)| PairSwaps {
            a,
            b,
            shared: shared.into_iter().collect(),
            swaps: swaps.per_pair[&(a, b)],
        })
        .collect();
    let fids: Vec<f64> = rows.iter().map(|r| r.fidelity).collect();
    MethodSummary {
        method: run.method.to_string(),
        target_k: run.target_k,
        actual_k: parts.len(),
        cut_qubits: cut_qubits(parts).into_iter().collect(),
        pairs,
        swaps: swaps.total,
        swaps_waived: swaps.waived,
        fidelity: total_fidelity(&fids),
        max_depth: rows.iter().map(|r| r.depth).max().unwrap_or(0),
        gate_counts_valid: validate_gate_counts(original, parts),
        partitions: rows,
    }
}

pub fn build_report(original: &Circuit, a: MethodRun<'_>, b: MethodRun<'_>, opts: &ReportOptions) -> ComparisonReport {
    let timings = [(a.method.to_string(), a.seconds), (b.method.to_string(), b.seconds)]
        .into_iter()
        .collect();
    ComparisonReport {
        circuit: opts.circuit_name.clone(),
        qubits: original.num_qubits(),
        gates: original.len(),
        block_size: opts.block_size,
        heuristic: opts.heuristic,
        seed: opts.seed,
        methods: vec![summarize(original, &a, opts), summarize(original, &b, opts)],
        timings,
    }
}

impl ComparisonReport {
    pub fn is_valid(&self) -> bool {
        self.methods.iter().all(|m| m.gate_counts_valid)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON document with the `timings` key removed.
    pub fn to_json_without_timings(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {} qubits, {} gates", self.circuit, self.qubits, self.gates);
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<12} {:>4} {:>9} {:>9} {:>11} {:>6} {:>8} {:>10} {:>9}",
            "Method", "BS", "Target k", "Actual k", "Cut Qubits", "SWAPs", "Fid.", "Max Depth", "Time (s)"
        );
        let bs = self.block_size.map_or("-".to_string(), |b| b.to_string());
        for m in &self.methods {
            let target = m.target_k.map_or("N/A".to_string(), |k| k.to_string());
            let secs = self.timings.get(&m.method).copied().unwrap_or(0.0);
            let _ = writeln!(
                s,
                "{:<12} {:>4} {:>9} {:>9} {:>11} {:>6} {:>8.4} {:>10} {:>9.3}",
                m.method,
                bs,
                target,
                m.actual_k,
                m.cut_qubits.len(),
                m.swaps,
                m.fidelity,
                m.max_depth,
                secs
            );
        }
        for m in &self.methods {
            let _ = writeln!(s);
            let _ = writeln!(s, "[{}]", m.method);
            let _ = writeln!(
                s,
                "Gate-count validation: {}",
                if m.gate_counts_valid { "passed" } else { "FAILED" }
            );
            let _ = writeln!(
                s,
                "Global cut qubits (original circuit indices): {}",
                fmt_set(&m.cut_qubits)
            );
            let _ = writeln!(s, "Pairwise cut qubits (original circuit indices):");
            for p in &m.pairs {
                let _ = writeln!(s, "Partitions {} <-> {}: {}", p.a, p.b, fmt_set(&p.shared));
            }
            let _ = writeln!(s, "Total SWAP gates needed: {}", m.swaps);
            if self.heuristic {
                let _ = writeln!(s, "SWAPs waived by heuristic: {}", m.swaps_waived);
            }
            for r in &m.partitions {
                let _ = writeln!(
                    s,
                    "Partition {}: gates {}, depth {}, H {}, CNOT {}, SWAP {}, fidelity {:.4}, error rate {:.4}",
                    r.index,
                    r.gate_count,
                    r.depth,
                    r.h_count,
                    r.cnot_count,
                    r.swap_attributed,
                    r.fidelity,
                    r.error_rate
                );
            }
        }
        s
    }
}

fn fmt_map(map: &QubitMap) -> String {
    let items: Vec<String> = map.iter().map(|(g, l)| format!("{g}: {l}")).collect();
    format!("{{{}}}", items.join(", "))
}

fn fmt_list(items: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = items.into_iter().map(|q| q.to_string()).collect();
    format!("[{}]", items.join(", "))
}

/// Listing of one partition: its maps and every gate with local and
/// original qubit indices.
pub fn render_partition(index: usize, part: &Partition) -> String {
    let mut s = String::new();
    let inv = part.inverse_map();
    let _ = writeln!(s, "Partition {index}:");
    let _ = writeln!(
        s,
        "- Original Circuit Qubits Used: {} (Indices: {})",
        inv.len(),
        fmt_list(part.qubit_map().keys().copied())
    );
    let _ = writeln!(
        s,
        "- Partition Qubits: {} (Indices: {})",
        inv.len(),
        fmt_list(0..inv.len())
    );
    let _ = writeln!(s, "- Qubit Map: {}", fmt_map(part.qubit_map()));
    let _ = writeln!(s, "- Gates:");
    for (n, g) in part.subcircuit().gates().iter().enumerate() {
        let local: Vec<String> = g.qubits().iter().map(|q| q.to_string()).collect();
        let global: Vec<String> = g.qubits().iter().map(|&q| inv[q].to_string()).collect();
        let _ = writeln!(
            s,
            "  {}. {}@(Partition Qubits: {}; Original Circuit Qubits: {})",
            n + 1,
            g.kind().name(),
            local.join(", "),
            global.join(", ")
        );
    }
    let counts = GateCounts::of(part.subcircuit());
    let _ = writeln!(s, "- Number of Gates: {}", part.len());
    let _ = writeln!(s, "- Depth: {}", part.subcircuit().depth());
    let _ = writeln!(s, "- H gates: {}", counts.h);
    let _ = writeln!(s, "- CNOT gates: {}", counts.cnot);
    if part
        .subcircuit()
        .gates()
        .iter()
        .any(|g| !matches!(g.kind(), GateKind::H | GateKind::Cnot))
    {
        let _ = writeln!(s, "- Other gates: {}", part.len() - counts.h - counts.cnot);
    }
    s
}
