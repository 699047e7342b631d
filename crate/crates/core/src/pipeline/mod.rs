//! From labels to executable subcircuits: trimming, optional merging, and
//! the dependency DAG between partitions.

pub(crate) mod dag;
mod fixture;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::partitioner::PartitionAssignment;

pub use dag::{build_dependency_graph, DagEdge, DependencyDag};
pub use fixture::{FixtureError, GroupFixture};

/// Global qubit index -> local physical index.
pub type QubitMap = BTreeMap<usize, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("Number of labels does not match number of operations in circuit ({labels} labels, {gates} gates)")]
    LabelCountMismatch { labels: usize, gates: usize },
    #[error("gate index {index} out of range for a {len}-gate circuit")]
    GateOutOfRange { index: usize, len: usize },
    #[error("gate index {0} assigned to more than one group")]
    DuplicateGate(usize),
}

/// A trimmed subcircuit over local qubits `0..n`, plus the map back to the
/// original circuit's qubits. Locals are assigned in ascending order of
/// global index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    subcircuit: Circuit,
    qubit_map: QubitMap,
    /// Original gate index of each subcircuit gate.
    origin: Vec<usize>,
}

impl Partition {
    /// Collects `indices` from `circuit` (in the given order) and applies the
    /// local contiguous re-mapping.
    pub fn from_gate_indices(circuit: &Circuit, indices: &[usize]) -> Result<Self, PipelineError> {
        let gates = indices
            .iter()
            .map(|&i| {
                circuit.gates().get(i).cloned().ok_or(PipelineError::GateOutOfRange {
                    index: i,
                    len: circuit.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Partition::from_global_gates(&gates, indices.to_vec()))
    }

    fn from_global_gates(gates: &[Gate], origin: Vec<usize>) -> Self {
        let active: BTreeSet<usize> = gates.iter().flat_map(|g| g.qubits().iter().copied()).collect();
        let qubit_map: QubitMap = active.into_iter().enumerate().map(|(l, g)| (g, l)).collect();
        let mut subcircuit = Circuit::new(qubit_map.len());
        for g in gates {
            subcircuit
                .push(g.remapped(|q| qubit_map[&q]))
                .expect("active qubits are mapped");
        }
        Partition {
            subcircuit,
            qubit_map,
            origin,
        }
    }

    pub fn subcircuit(&self) -> &Circuit {
        &self.subcircuit
    }

    pub fn qubit_map(&self) -> &QubitMap {
        &self.qubit_map
    }

    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.subcircuit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subcircuit.is_empty()
    }

    /// Local index -> global index.
    pub fn inverse_map(&self) -> Vec<usize> {
        let mut inv = vec![0; self.qubit_map.len()];
        for (&g, &l) in &self.qubit_map {
            inv[l] = g;
        }
        inv
    }

    /// The subcircuit's gates translated back to global qubits.
    pub fn global_gates(&self) -> Vec<Gate> {
        let inv = self.inverse_map();
        self.subcircuit.gates().iter().map(|g| g.remapped(|q| inv[q])).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trimmed {
    pub partitions: Vec<Partition>,
    /// Label of each emitted partition.
    pub part_ids: Vec<usize>,
    /// Labels in `0..k` that received no gates.
    pub empty_parts: Vec<usize>,
}

/// Splits `circuit` by label. One partition per distinct label, in
/// ascending label order; gates keep their original relative order.
pub fn create_trimmed_partitions(
    circuit: &Circuit,
    assignment: &PartitionAssignment,
) -> Result<Trimmed, PipelineError> {
    let labels = assignment.labels();
    if labels.len() != circuit.len() {
        return Err(PipelineError::LabelCountMismatch {
            labels: labels.len(),
            gates: circuit.len(),
        });
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().push(i);
    }
    let empty_parts: Vec<usize> = (0..assignment.k()).filter(|p| !groups.contains_key(p)).collect();
    for p in &empty_parts {
        log::warn!("Partition {p} is empty (no active qubits).");
    }
    let mut partitions = Vec::with_capacity(groups.len());
    let mut part_ids = Vec::with_capacity(groups.len());
    for (id, idx) in groups {
        partitions.push(Partition::from_gate_indices(circuit, &idx)?);
        part_ids.push(id);
    }
    Ok(Trimmed {
        partitions,
        part_ids,
        empty_parts,
    })
}

pub fn shared_qubits(a: &QubitMap, b: &QubitMap) -> BTreeSet<usize> {
    a.keys().filter(|q| b.contains_key(q)).copied().collect()
}

/// `a`'s gates followed by `b`'s over the re-mapped union of their qubits.
pub fn combine_partitions(a: &Partition, b: &Partition) -> Partition {
    let mut gates = a.global_gates();
    gates.extend(b.global_gates());
    let origin = a.origin.iter().chain(&b.origin).copied().collect();
    Partition::from_global_gates(&gates, origin)
}

/// Greedy multi-pass merging. In each pass every partition not yet consumed
/// is combined with the later unconsumed partition sharing the most qubits,
/// provided that count reaches `threshold` (first maximum wins). Passes
/// repeat until one performs no merge.
pub fn merge_partitions(parts: Vec<Partition>, threshold: usize) -> Vec<Partition> {
    assert!(threshold >= 1, "merge threshold must be at least 1");
    let mut parts = parts;
    loop {
        let mut merged = false;
        let mut used = vec![false; parts.len()];
        let mut next = Vec::with_capacity(parts.len());
        for i in 0..parts.len() {
            if used[i] {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            for j in i + 1..parts.len() {
                if used[j] {
                    continue;
                }
                let n = shared_qubits(parts[i].qubit_map(), parts[j].qubit_map()).len();
                if n >= threshold && best.is_none_or(|(_, m)| n > m) {
                    best = Some((j, n));
                }
            }
            used[i] = true;
            match best {
                Some((j, _)) => {
                    used[j] = true;
                    next.push(combine_partitions(&parts[i], &parts[j]));
                    merged = true;
                }
                None => next.push(parts[i].clone()),
            }
        }
        parts = next;
        if !merged {
            return parts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Benchmark;

    fn reference_labels() -> PartitionAssignment {
        PartitionAssignment::new(
            vec![0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1],
            2,
        )
        .unwrap()
    }

    fn map(pairs: &[(usize, usize)]) -> QubitMap {
        pairs.iter().copied().collect()
    }

    #[test]
    fn trims_circuit_s() {
        let t = create_trimmed_partitions(&Benchmark::S.circuit(), &reference_labels()).unwrap();
        assert_eq!(t.partitions.len(), 2);
        assert_eq!(t.partitions[0].qubit_map(), &map(&[(0, 0), (1, 1), (2, 2), (3, 3)]));
        assert_eq!(t.partitions[1].qubit_map(), &map(&[(0, 0), (1, 1), (4, 2), (5, 3)]));
        assert_eq!(t.partitions[0].len(), 11);
        assert_eq!(t.partitions[1].len(), 11);
        assert_eq!(t.partitions[1].subcircuit().gates()[0], Gate::cnot(3, 0));
        assert!(t.empty_parts.is_empty());
    }

    #[test]
    fn label_mismatch_is_an_error() {
        let c = Benchmark::S.circuit();
        let a = PartitionAssignment::new(vec![0; 3], 1).unwrap();
        assert_eq!(
            create_trimmed_partitions(&c, &a).unwrap_err(),
            PipelineError::LabelCountMismatch { labels: 3, gates: 22 }
        );
    }

    #[test]
    fn absent_label_is_skipped() {
        let c = Circuit::from_gates(3, vec![Gate::h(2), Gate::cnot(0, 1)]).unwrap();
        let a = PartitionAssignment::new(vec![0, 2], 3).unwrap();
        let t = create_trimmed_partitions(&c, &a).unwrap();
        assert_eq!(t.part_ids, vec![0, 2]);
        assert_eq!(t.empty_parts, vec![1]);
        assert_eq!(t.partitions[0].qubit_map(), &map(&[(2, 0)]));
        assert_eq!(t.partitions[0].subcircuit().gates(), &[Gate::h(0)]);
    }

    #[test]
    fn single_partition_is_identity_over_active_qubits() {
        let c = Circuit::from_gates(5, vec![Gate::h(1), Gate::cnot(3, 1)]).unwrap();
        let t = create_trimmed_partitions(&c, &PartitionAssignment::new(vec![0, 0], 1).unwrap()).unwrap();
        assert_eq!(t.partitions.len(), 1);
        assert_eq!(t.partitions[0].qubit_map(), &map(&[(1, 0), (3, 1)]));
        assert_eq!(t.partitions[0].global_gates(), c.gates());
    }

    #[test]
    fn shared_qubit_examples() {
        let a = map(&[(0, 0), (1, 1), (2, 2), (3, 3)]);
        let b = map(&[(0, 0), (1, 1), (4, 2), (5, 3)]);
        assert_eq!(shared_qubits(&a, &b), BTreeSet::from([0, 1]));
        assert!(shared_qubits(&a, &map(&[(7, 0)])).is_empty());
        assert_eq!(shared_qubits(&a, &a).len(), 4);
    }

    #[test]
    fn combine_circuit_s_partitions() {
        let t = create_trimmed_partitions(&Benchmark::S.circuit(), &reference_labels()).unwrap();
        let m = combine_partitions(&t.partitions[0], &t.partitions[1]);
        assert_eq!(m.qubit_map(), &(0..6).map(|q| (q, q)).collect::<QubitMap>());
        assert_eq!(m.len(), 22);
        assert_eq!(&m.global_gates()[..11], &t.partitions[0].global_gates()[..]);
        assert_eq!(m.subcircuit().gates()[11], Gate::cnot(5, 0));
    }

    #[test]
    fn combine_with_empty_partition() {
        let c = Circuit::from_gates(4, vec![Gate::cnot(3, 1)]).unwrap();
        let x = Partition::from_gate_indices(&c, &[0]).unwrap();
        let empty = Partition::from_gate_indices(&c, &[]).unwrap();
        assert_eq!(combine_partitions(&x, &empty), x);
    }

    #[test]
    fn merge_thresholds() {
        let t = create_trimmed_partitions(&Benchmark::S.circuit(), &reference_labels()).unwrap();
        let merged = merge_partitions(t.partitions.clone(), 2);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].len(), 22);
        assert_eq!(merge_partitions(t.partitions.clone(), 3), t.partitions);
    }

    #[test]
    fn merge_takes_two_passes() {
        // A = {0,1,2}, B = {0,1,2,3,4,5}, C = {3,4,5}: A∩B = 3, B∩C = 3, A∩C = 0.
        let c = Circuit::from_gates(
            6,
            vec![
                Gate::ccx(0, 1, 2),
                Gate::ccx(0, 1, 2),
                Gate::ccx(3, 4, 5),
                Gate::ccx(3, 4, 5),
            ],
        )
        .unwrap();
        let a = Partition::from_gate_indices(&c, &[0]).unwrap();
        let b = Partition::from_gate_indices(&c, &[1, 2]).unwrap();
        let cc = Partition::from_gate_indices(&c, &[3]).unwrap();
        assert_eq!(shared_qubits(a.qubit_map(), b.qubit_map()).len(), 3);
        assert_eq!(shared_qubits(b.qubit_map(), cc.qubit_map()).len(), 3);
        assert_eq!(shared_qubits(a.qubit_map(), cc.qubit_map()).len(), 0);
        let merged = merge_partitions(vec![a, b, cc], 3);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].origin(), &[0, 1, 2, 3]);
    }

    #[test]
    fn merge_prefers_first_maximum() {
        let c = Circuit::from_gates(4, vec![Gate::cnot(0, 1), Gate::cnot(0, 1), Gate::cnot(1, 0)]).unwrap();
        let parts: Vec<Partition> = (0..3)
            .map(|i| Partition::from_gate_indices(&c, &[i]).unwrap())
            .collect();
        let merged = merge_partitions(parts, 1);
        // Pass 1: 0+1, 2 carried; pass 2: (01)+2.
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].origin(), &[0, 1, 2]);
    }
}
