//! Fidelity-aware hypergraph partitioning of quantum circuits.
//!
//! Circuits are turned into weighted hypergraphs, partitioned under the km1
//! objective, cut into trimmed subcircuits and compared against a block
//! baseline on cut qubits, SWAP estimates, fidelity and depth.

pub mod baseline;
pub mod circuit;
pub mod hypergraph;
pub mod metrics;
pub mod noise;
pub mod par;
pub mod partitioner;
pub mod pipeline;
pub mod rng;
pub mod workflow;
