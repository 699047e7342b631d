use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{shared_qubits, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagEdge {
    pub from: usize,
    pub to: usize,
    pub shared: BTreeSet<usize>,
}

/// Execution order between partitions that touch the same global qubits.
/// Edges always run from the lower partition index to the higher one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyDag {
    pub num_partitions: usize,
    pub edges: Vec<DagEdge>,
}

pub fn build_dependency_graph(parts: &[Partition]) -> DependencyDag {
    let mut edges = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let shared = shared_qubits(parts[i].qubit_map(), parts[j].qubit_map());
            if !shared.is_empty() {
                edges.push(DagEdge { from: i, to: j, shared });
            }
        }
    }
    DependencyDag {
        num_partitions: parts.len(),
        edges,
    }
}

impl DependencyDag {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Kahn's algorithm; `None` if the edges contain a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.num_partitions;
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for e in &self.edges {
            indeg[e.to] += 1;
            out[e.from].push(e.to);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

pub(crate) fn fmt_set<'a>(set: impl IntoIterator<Item = &'a usize>) -> String {
    let items: Vec<String> = set.into_iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for DependencyDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dependency Graph:")?;
        writeln!(f, "-----------------")?;
        for e in &self.edges {
            writeln!(
                f,
                "Partition {} -> Partition {} | Shared qubits: {}",
                e.from,
                e.to,
                fmt_set(&e.shared)
            )?;
        }
        writeln!(f)?;
        writeln!(f, "Total dependencies: {}", self.edges.len())?;
        writeln!(f, "Legend: Partition X -> Partition Y means X must execute before Y")
    }
}
