//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! qubits 3
//! h 0
//! cx 0 1
//! swap 1 2
//! ccx 0 1 2
//! g rz 1 2
//! ```
//!
//! `g <name> <arity> q...` declares a gate outside the built-in catalog.

use std::fmt::Write as _;

use super::{Circuit, CircuitError, Gate, GateKind};

fn syntax(line: usize, msg: impl Into<String>) -> CircuitError {
    CircuitError::Syntax { line, msg: msg.into() }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, CircuitError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            if toks.len() != 2 || toks[0] != "qubits" {
                return Err(syntax(line_no, "expected `qubits N` header"));
            }
            circuit = Some(Circuit::new(parse_index(toks[1], line_no)?));
            continue;
        };
        let (kind, operands) = match toks[0] {
            "h" => (GateKind::H, &toks[1..]),
            "cx" => (GateKind::Cnot, &toks[1..]),
            "swap" => (GateKind::Swap, &toks[1..]),
            "ccx" => (GateKind::Ccx, &toks[1..]),
            "g" => {
                if toks.len() < 3 {
                    return Err(syntax(line_no, "expected `g <name> <arity> q...`"));
                }
                let kind = GateKind::Other {
                    name: toks[1].to_string(),
                    arity: parse_index(toks[2], line_no)?,
                };
                (kind, &toks[3..])
            }
            "qubits" => return Err(syntax(line_no, "duplicate `qubits` header")),
            other => return Err(syntax(line_no, format!("unknown gate `{other}`"))),
        };
        let qubits = operands
            .iter()
            .map(|t| parse_index(t, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        let gate = Gate::new(kind, qubits).map_err(|e| syntax(line_no, e.to_string()))?;
        c.push(gate).map_err(|e| syntax(line_no, e.to_string()))?;
    }
    circuit.ok_or_else(|| syntax(0, "missing `qubits N` header"))
}

pub fn serialize_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.num_qubits());
    for g in circuit.gates() {
        let head = match g.kind() {
            GateKind::H => "h".to_string(),
            GateKind::Cnot => "cx".to_string(),
            GateKind::Swap => "swap".to_string(),
            GateKind::Ccx => "ccx".to_string(),
            GateKind::Other { name, arity } => format!("g {name} {arity}"),
        };
        out.push_str(&head);
        for q in g.qubits() {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
    }
    out
}
