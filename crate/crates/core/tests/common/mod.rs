//! Strategies and oracles shared by the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;

use qpart::circuit::{Circuit, Gate, GateKind};
use qpart::partitioner::PartitionAssignment;
use qpart::pipeline::Partition;

pub fn distinct(n: usize, count: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::sample::subsequence((0..n).collect::<Vec<_>>(), count).prop_shuffle()
}

pub fn gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        3 => (0..n).prop_map(Gate::h),
        1 => (0..n).prop_map(|a| Gate::new(GateKind::Other { name: "rz".into(), arity: 1 }, vec![a]).unwrap()),
        4 => distinct(n, 2).prop_map(|v| Gate::cnot(v[0], v[1])),
        1 => distinct(n, 2).prop_map(|v| Gate::swap(v[0], v[1])),
        1 => distinct(n, 3).prop_map(|v| Gate::ccx(v[0], v[1], v[2])),
    ]
}

pub fn circuit(max_gates: usize) -> impl Strategy<Value = Circuit> {
    (3usize..9).prop_flat_map(move |n| {
        prop::collection::vec(gate(n), 0..max_gates).prop_map(move |g| Circuit::from_gates(n, g).unwrap())
    })
}

pub fn labeled(max_gates: usize) -> impl Strategy<Value = (Circuit, PartitionAssignment)> {
    (circuit(max_gates), 1usize..5).prop_flat_map(|(c, k)| {
        prop::collection::vec(0..k, c.len()).prop_map(move |l| (c.clone(), PartitionAssignment::new(l, k).unwrap()))
    })
}

/// Puts every partition gate back at its original index.
pub fn reconstruct(parts: &[Partition], len: usize) -> Vec<Option<Gate>> {
    let mut out = vec![None; len];
    for p in parts {
        for (g, &i) in p.global_gates().into_iter().zip(p.origin()) {
            out[i] = Some(g);
        }
    }
    out
}

pub fn map_invariants_hold(p: &Partition) -> bool {
    let locals: Vec<usize> = p.qubit_map().values().copied().collect();
    let n = locals.len();
    locals == (0..n).collect::<Vec<_>>()
        && p.subcircuit().num_qubits() == n
        && p.subcircuit().gates().iter().all(|g| g.qubits().iter().all(|&q| q < n))
}

/// Whether nodes weighing only 200 or 1000 fit into `bins` parts of at most
/// `cap`. Within a part, filling leftover room with 200s never hurts.
pub fn packable(weights: &[u64], bins: usize, cap: f64) -> bool {
    assert!(weights.iter().all(|&w| w == 200 || w == 1000));
    fn go(big: usize, small: usize, bins: usize, cap: u64) -> bool {
        if bins == 0 {
            return big == 0 && small == 0;
        }
        (0..=big.min((cap / 1000) as usize)).any(|x| {
            let room = ((cap - 1000 * x as u64) / 200) as usize;
            go(big - x, small - room.min(small), bins - 1, cap)
        })
    }
    let big = weights.iter().filter(|&&w| w == 1000).count();
    go(big, weights.len() - big, bins, cap.floor() as u64)
}
