//! Built-in benchmark circuits.
//!
//! `S` is a fixed 6-qubit, 22-gate H/CNOT circuit. `M` and `L` are
//! deterministic constructions with 10/55 and 24/88 qubits/gates.

use std::fmt;
use std::str::FromStr;

use super::{Circuit, Gate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Benchmark {
    S,
    M,
    L,
}

impl Benchmark {
    pub const ALL: [Benchmark; 3] = [Benchmark::S, Benchmark::M, Benchmark::L];

    pub fn circuit(self) -> Circuit {
        let (n, gates) = match self {
            Benchmark::S => (6, circuit_s()),
            Benchmark::M => (10, circuit_m()),
            Benchmark::L => (24, circuit_l()),
        };
        Circuit::from_gates(n, gates).expect("benchmark circuits are valid")
    }

    /// Block size used for this benchmark in the reference comparison.
    pub fn block_size(self) -> usize {
        match self {
            Benchmark::S => 4,
            Benchmark::M => 6,
            Benchmark::L => 8,
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Benchmark::S => "s",
            Benchmark::M => "m",
            Benchmark::L => "l",
        })
    }
}

impl FromStr for Benchmark {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(Benchmark::S),
            "m" => Ok(Benchmark::M),
            "l" => Ok(Benchmark::L),
            _ => Err(format!("unknown benchmark `{s}` (expected s, m or l)")),
        }
    }
}

fn circuit_s() -> Vec<Gate> {
    vec![
        Gate::h(0),
        Gate::h(3),
        Gate::cnot(5, 0),
        Gate::h(0),
        Gate::cnot(1, 5),
        Gate::cnot(0, 2),
        Gate::h(1),
        Gate::cnot(5, 4),
        Gate::h(0),
        Gate::h(2),
        Gate::cnot(1, 0),
        Gate::h(2),
        Gate::cnot(0, 4),
        Gate::h(2),
        Gate::cnot(3, 0),
        Gate::h(4),
        Gate::cnot(0, 5),
        Gate::h(4),
        Gate::cnot(1, 5),
        Gate::h(4),
        Gate::h(4),
        Gate::cnot(4, 5),
    ]
}

/// H layer, nearest-neighbour CNOT chain, then 36 stride CNOTs cycling
/// through strides 2, 3 and 5.
fn circuit_m() -> Vec<Gate> {
    const N: usize = 10;
    const STRIDES: [usize; 3] = [2, 3, 5];
    let mut gates: Vec<Gate> = (0..N).map(Gate::h).collect();
    gates.extend((0..N - 1).map(|i| Gate::cnot(i, i + 1)));
    for t in 0..36 {
        let s = STRIDES[t % STRIDES.len()];
        let i = (t / STRIDES.len()) % (N - s);
        gates.push(Gate::cnot(i, i + s));
    }
    gates
}

/// Alternating CNOT and CCX layers over 24 qubits.
fn circuit_l() -> Vec<Gate> {
    const N: usize = 24;
    let mut gates: Vec<Gate> = (0..N - 1).map(|i| Gate::cnot(i, i + 1)).collect();
    gates.extend((0..N - 2).step_by(3).map(|i| Gate::ccx(i, i + 1, i + 2)));
    gates.extend((0..12).map(|i| Gate::cnot(i, i + 12)));
    gates.extend((0..N - 1).map(|i| Gate::cnot(i + 1, i)));
    gates.extend((1..N - 2).step_by(3).map(|i| Gate::ccx(i, i + 1, i + 2)));
    gates.extend((0..15).map(|i| Gate::cnot(i, i + 6)));
    gates
}
