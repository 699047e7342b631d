//! Block-size-driven baseline partitioner and replay of recorded groups.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::circuit::Circuit;
use crate::pipeline::{FixtureError, GroupFixture, Partition, PipelineError};

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("block size must be at least 1")]
    ZeroBlockSize,
    #[error("gate {gate} acts on {arity} qubits, more than the block size {block_size}")]
    GateTooWide {
        gate: usize,
        arity: usize,
        block_size: usize,
    },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineConfig {
    /// Maximum number of distinct qubits per block.
    pub block_size: usize,
}

impl BaselineConfig {
    pub fn new(block_size: usize) -> Result<Self, BaselineError> {
        if block_size == 0 {
            return Err(BaselineError::ZeroBlockSize);
        }
        Ok(BaselineConfig { block_size })
    }
}

struct Block {
    qubits: BTreeSet<usize>,
    gates: Vec<usize>,
}

/// Streams the gates once. A gate joins the earliest block that still has
/// room for its qubits, unless a later block already touches one of them;
/// otherwise it opens a new block. Blocks come out in opening order.
pub fn block_partition(circuit: &Circuit, config: BaselineConfig) -> Result<Vec<Vec<usize>>, BaselineError> {
    let size = config.block_size;
    if size == 0 {
        return Err(BaselineError::ZeroBlockSize);
    }
    let mut blocks: Vec<Block> = Vec::new();
    for (i, gate) in circuit.gates().iter().enumerate() {
        let qs = gate.qubits();
        if qs.len() > size {
            return Err(BaselineError::GateTooWide {
                gate: i,
                arity: qs.len(),
                block_size: size,
            });
        }
        // Blocks at or after `first_legal` are the only ones with no later
        // block touching these qubits.
        let first_legal = blocks
            .iter()
            .rposition(|b| qs.iter().any(|q| b.qubits.contains(q)))
            .unwrap_or(0);
        let target = (first_legal..blocks.len()).find(|&b| {
            let fresh = qs.iter().filter(|q| !blocks[b].qubits.contains(q)).count();
            blocks[b].qubits.len() + fresh <= size
        });
        match target {
            Some(b) => {
                blocks[b].qubits.extend(qs);
                blocks[b].gates.push(i);
            }
            None => blocks.push(Block {
                qubits: qs.iter().copied().collect(),
                gates: vec![i],
            }),
        }
    }
    Ok(blocks.into_iter().map(|b| b.gates).collect())
}

fn check_groups(circuit: &Circuit, groups: &[Vec<usize>]) -> Result<(), PipelineError> {
    let mut seen = vec![false; circuit.len()];
    for &i in groups.iter().flatten() {
        let slot = seen.get_mut(i).ok_or(PipelineError::GateOutOfRange {
            index: i,
            len: circuit.len(),
        })?;
        if *slot {
            return Err(PipelineError::DuplicateGate(i));
        }
        *slot = true;
    }
    Ok(())
}

/// Local contiguous re-mapping of each group.
pub fn remap_groups(circuit: &Circuit, groups: &[Vec<usize>]) -> Result<Vec<Partition>, PipelineError> {
    check_groups(circuit, groups)?;
    groups
        .iter()
        .map(|g| Partition::from_gate_indices(circuit, g))
        .collect()
}

/// Reads a group fixture and checks it against `circuit`.
pub fn load_fixture(text: &str, circuit: &Circuit) -> Result<Vec<Vec<usize>>, BaselineError> {
    let groups = GroupFixture::parse(text)?.partitions;
    check_groups(circuit, &groups)?;
    Ok(groups)
}
