//! Gate-list circuit IR.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a fixed number of
//! qubits. Every stage of the pipeline consumes and produces circuits in
//! this form; gate order is significant everywhere.

mod bench;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bench::Benchmark;
pub use text::{parse_circuit, serialize_circuit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {kind} expects {expected} qubits, got {got}")]
    ArityMismatch { kind: String, expected: usize, got: usize },
    #[error("gate {0} must act on at least one qubit")]
    ZeroArity(String),
    #[error("gate {kind} repeats qubit {qubit}")]
    DuplicateQubit { kind: String, qubit: usize },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// The gate catalog. Arity is fixed for the named kinds and declared for
/// [`GateKind::Other`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Cnot,
    Swap,
    Ccx,
    Other { name: String, arity: usize },
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H => 1,
            GateKind::Cnot | GateKind::Swap => 2,
            GateKind::Ccx => 3,
            GateKind::Other { arity, .. } => *arity,
        }
    }

    pub fn is_multi_qubit(&self) -> bool {
        self.arity() > 1
    }

    /// Class name used in listings, e.g. `HGate`, `CNOTGate`.
    pub fn name(&self) -> &str {
        match self {
            GateKind::H => "HGate",
            GateKind::Cnot => "CNOTGate",
            GateKind::Swap => "SwapGate",
            GateKind::Ccx => "CCXGate",
            GateKind::Other { name, .. } => name,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate applied to an ordered tuple of qubits. For CNOT the tuple is
/// `(control, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self, CircuitError> {
        if kind.arity() == 0 {
            return Err(CircuitError::ZeroArity(kind.name().to_string()));
        }
        if qubits.len() != kind.arity() {
            return Err(CircuitError::ArityMismatch {
                kind: kind.name().to_string(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(CircuitError::DuplicateQubit {
                    kind: kind.name().to_string(),
                    qubit: *q,
                });
            }
        }
        Ok(Gate { kind, qubits })
    }

    pub fn h(q: usize) -> Self {
        Gate {
            kind: GateKind::H,
            qubits: vec![q],
        }
    }

    /// Panics if `control == target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::Cnot, vec![control, target]).expect("valid cnot")
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Swap, vec![a, b]).expect("valid swap")
    }

    pub fn ccx(a: usize, b: usize, c: usize) -> Self {
        Gate::new(GateKind::Ccx, vec![a, b, c]).expect("valid ccx")
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Same gate kind on a different qubit tuple.
    pub fn remapped(&self, f: impl Fn(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind.clone(),
            qubits: self.qubits.iter().map(|&q| f(q)).collect(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on (", self.kind)?;
        for (i, q) in self.qubits.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        if self.qubits.len() == 1 {
            f.write_str(",")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&qubit) = gate.qubits.iter().find(|&&q| q >= self.num_qubits) {
            return Err(CircuitError::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate indices touching each qubit, in gate order.
    pub fn gates_per_qubit(&self) -> Vec<Vec<usize>> {
        let mut per = vec![Vec::new(); self.num_qubits];
        for (i, g) in self.gates.iter().enumerate() {
            for &q in g.qubits() {
                per[q].push(i);
            }
        }
        per
    }

    /// Length of the longest chain under as-soon-as-possible layering,
    /// where two gates conflict iff they share a qubit.
    pub fn depth(&self) -> usize {
        let mut layer = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let l = 1 + g.qubits().iter().map(|&q| layer[q]).max().unwrap_or(0);
            for &q in g.qubits() {
                layer[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }
}
