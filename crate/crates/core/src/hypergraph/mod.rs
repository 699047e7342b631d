//! Fidelity-weighted hypergraph model of a circuit.
//!
//! One node per gate. Two hyperedge families:
//!
//! * gate-level: a singleton `{g}` for every multi-qubit gate `g`, weighted
//!   `100 * arity / eps`;
//! * temporal chain: every gate index acting on a qubit that hosts at least
//!   two gates, weighted `max(1, 100 * floor(m / 2) / eps_h)`.
//!
//! Node weights are `10 / eps_cnot` for CNOTs and `1 / eps` otherwise.
//! Weights are kept as `f64` and rounded only when serialized or handed to
//! the solver.

mod hgr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::noise::ErrorModel;

pub use hgr::{read_hgr, write_hgr, HgrError, HgrMode};

/// Hyperedge weights are rescaled so the heaviest becomes this value.
pub const NORMALIZED_MAX: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("hyperedge {edge} has no pins")]
    EmptyEdge { edge: usize },
    #[error("hyperedge {edge} references node {node} but there are only {num_nodes} nodes")]
    PinOutOfRange { edge: usize, node: usize, num_nodes: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    GateLevel,
    TemporalChain {
        qubit: usize,
    },
    /// Read back from a file, where the family is not recorded.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub pins: Vec<usize>,
    pub weight: f64,
    pub kind: EdgeKind,
}

impl Hyperedge {
    /// Weight as the integer the solver and file formats see.
    pub fn int_weight(&self) -> u64 {
        round_weight(self.weight)
    }
}

pub(crate) fn round_weight(w: f64) -> u64 {
    w.round().max(0.0) as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypergraph {
    node_weights: Vec<f64>,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    pub fn new(node_weights: Vec<f64>, edges: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        let n = node_weights.len();
        for (i, e) in edges.iter().enumerate() {
            if e.pins.is_empty() {
                return Err(HypergraphError::EmptyEdge { edge: i });
            }
            if let Some(&node) = e.pins.iter().find(|&&p| p >= n) {
                return Err(HypergraphError::PinOutOfRange {
                    edge: i,
                    node,
                    num_nodes: n,
                });
            }
        }
        Ok(Hypergraph { node_weights, edges })
    }

    pub fn num_nodes(&self) -> usize {
        self.node_weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn node_weights(&self) -> &[f64] {
        &self.node_weights
    }

    pub fn int_node_weights(&self) -> Vec<u64> {
        self.node_weights.iter().map(|&w| round_weight(w)).collect()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// The same hyperedges with every node weight set to 1, which is how a
    /// strict hMETIS reader sees a fmt `1` file.
    pub fn with_unit_node_weights(&self) -> Hypergraph {
        Hypergraph {
            node_weights: vec![1.0; self.node_weights.len()],
            edges: self.edges.clone(),
        }
    }

    /// Multiplies every hyperedge weight by `factor`.
    pub fn scale_edge_weights(&self, factor: f64) -> Hypergraph {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.weight *= factor;
        }
        out
    }
}

pub fn node_weight(kind: &GateKind, model: &ErrorModel) -> f64 {
    match kind {
        GateKind::Cnot => 10.0 * (1.0 / model.eps_cnot),
        other => 1.0 / model.node_eps(other),
    }
}

pub fn gate_level_edge_weight(arity: usize, eps: f64) -> f64 {
    100.0 * arity as f64 * (1.0 / eps)
}

pub fn temporal_edge_weight(gates_on_qubit: usize, model: &ErrorModel) -> f64 {
    let density = 100.0 * (gates_on_qubit / 2) as f64 * (1.0 / model.eps_h);
    density.max(1.0)
}

/// Builds the un-normalized hypergraph. Gate-level hyperedges come first in
/// gate order, then temporal chains in qubit order.
pub fn circuit_to_hypergraph(circuit: &Circuit, model: &ErrorModel) -> Hypergraph {
    let node_weights = circuit.gates().iter().map(|g| node_weight(g.kind(), model)).collect();

    let mut edges: Vec<Hyperedge> = circuit
        .gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind().is_multi_qubit())
        .map(|(i, g)| Hyperedge {
            pins: vec![i],
            weight: gate_level_edge_weight(g.kind().arity(), model.multi_eps(g.kind())),
            kind: EdgeKind::GateLevel,
        })
        .collect();

    for (qubit, gates) in circuit.gates_per_qubit().into_iter().enumerate() {
        if gates.len() > 1 {
            edges.push(Hyperedge {
                weight: temporal_edge_weight(gates.len(), model),
                pins: gates,
                kind: EdgeKind::TemporalChain { qubit },
            });
        }
    }
    edges.retain(|e| !e.pins.is_empty());

    Hypergraph { node_weights, edges }
}

/// Rescales hyperedge weights to `round(w * 1e6 / max_w)`, clamped to at
/// least 1. Node weights are untouched.
pub fn normalize_weights(hg: &Hypergraph) -> Hypergraph {
    let max_w = hg.edges.iter().map(|e| e.weight).fold(0.0_f64, f64::max);
    let mut out = hg.clone();
    for e in &mut out.edges {
        let w = if max_w > 0.0 {
            (e.weight * NORMALIZED_MAX / max_w).round()
        } else {
            e.weight.round()
        };
        e.weight = w.max(1.0);
    }
    out
}
