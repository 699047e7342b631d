use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::GateKind;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("error rate `{name}` = {value} is outside (0, 1)")]
pub struct InvalidErrorModel {
    pub name: &'static str,
    pub value: f64,
}

/// Per-gate error probabilities shared by hypergraph weighting and
/// fidelity estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    pub eps_h: f64,
    pub eps_cnot: f64,
    /// Single-qubit gates other than H.
    pub eps_default_single: f64,
    /// Multi-qubit gates other than CNOT (hyperedge weighting only).
    pub eps_default_multi: f64,
    /// CNOTs charged per CCX when estimating fidelity.
    pub ccx_cnot_equivalents: u32,
}

impl Default for ErrorModel {
    fn default() -> Self {
        ErrorModel {
            eps_h: 0.001,
            eps_cnot: 0.05,
            eps_default_single: 0.001,
            eps_default_multi: 0.05,
            ccx_cnot_equivalents: 6,
        }
    }
}

impl ErrorModel {
    pub fn validate(&self) -> Result<(), InvalidErrorModel> {
        for (name, value) in [
            ("eps_h", self.eps_h),
            ("eps_cnot", self.eps_cnot),
            ("eps_default_single", self.eps_default_single),
            ("eps_default_multi", self.eps_default_multi),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(InvalidErrorModel { name, value });
            }
        }
        Ok(())
    }

    /// Error rate used for node weights: H and CNOT have their own rates,
    /// everything else falls back to the single-qubit default.
    pub fn node_eps(&self, kind: &GateKind) -> f64 {
        match kind {
            GateKind::H => self.eps_h,
            GateKind::Cnot => self.eps_cnot,
            _ => self.eps_default_single,
        }
    }

    /// Error rate used for gate-level hyperedges of multi-qubit gates.
    pub fn multi_eps(&self, kind: &GateKind) -> f64 {
        match kind {
            GateKind::Cnot => self.eps_cnot,
            _ => self.eps_default_multi,
        }
    }
}
