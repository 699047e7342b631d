use std::collections::HashMap;

use crate::hypergraph::Hypergraph;
use crate::rng::SplitMix64;

/// Integer-weighted hypergraph with incidence lists, as used internally by
/// the solver. Hyperedges with fewer than two distinct pins can never be
/// cut and are dropped; duplicate hyperedges are merged.
#[derive(Debug, Clone)]
pub(crate) struct SolverGraph {
    pub node_w: Vec<u64>,
    pub pins: Vec<Vec<u32>>,
    pub edge_w: Vec<u64>,
    pub incident: Vec<Vec<u32>>,
}

impl SolverGraph {
    pub fn from_hypergraph(hg: &Hypergraph) -> Self {
        Self::build(
            hg.int_node_weights(),
            hg.edges()
                .iter()
                .map(|e| (e.pins.iter().map(|&p| p as u32).collect(), e.int_weight())),
        )
    }

    pub fn build(node_w: Vec<u64>, edges: impl IntoIterator<Item = (Vec<u32>, u64)>) -> Self {
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut pins: Vec<Vec<u32>> = Vec::new();
        let mut edge_w: Vec<u64> = Vec::new();
        for (mut p, w) in edges {
            p.sort_unstable();
            p.dedup();
            if p.len() < 2 || w == 0 {
                continue;
            }
            match index.get(&p) {
                Some(&i) => edge_w[i] += w,
                None => {
                    index.insert(p.clone(), pins.len());
                    pins.push(p);
                    edge_w.push(w);
                }
            }
        }
        let mut incident = vec![Vec::new(); node_w.len()];
        for (e, p) in pins.iter().enumerate() {
            for &v in p {
                incident[v as usize].push(e as u32);
            }
        }
        SolverGraph {
            node_w,
            pins,
            edge_w,
            incident,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.node_w.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.node_w.iter().sum()
    }

    pub fn part_weights(&self, labels: &[usize], k: usize) -> Vec<u64> {
        let mut w = vec![0; k];
        for (v, &l) in labels.iter().enumerate() {
            w[l] += self.node_w[v];
        }
        w
    }

    pub fn km1(&self, labels: &[usize], k: usize) -> u64 {
        let mut seen = vec![usize::MAX; k];
        let mut total = 0;
        for (e, p) in self.pins.iter().enumerate() {
            let mut lambda = 0u64;
            for &v in p {
                let l = labels[v as usize];
                if seen[l] != e {
                    seen[l] = e;
                    lambda += 1;
                }
            }
            total += self.edge_w[e] * (lambda - 1);
        }
        total
    }

    /// Induced sub-hypergraph on `nodes` (given in ascending order). Node
    /// `i` of the result is `nodes[i]`.
    pub fn induced(&self, nodes: &[usize]) -> SolverGraph {
        let mut local = vec![u32::MAX; self.num_nodes()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i as u32;
        }
        let edges = self.pins.iter().zip(&self.edge_w).filter_map(|(p, &w)| {
            let sub: Vec<u32> = p
                .iter()
                .map(|&v| local[v as usize])
                .filter(|&l| l != u32::MAX)
                .collect();
            (sub.len() >= 2).then_some((sub, w))
        });
        SolverGraph::build(nodes.iter().map(|&v| self.node_w[v]).collect(), edges)
    }
}

/// Heaviest nodes first (random order among equal weights), each to the
/// lightest part so far.
pub(crate) fn random_balanced(node_w: &[u64], k: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..node_w.len()).collect();
    rng.shuffle(&mut order);
    order.sort_by_key(|&v| std::cmp::Reverse(node_w[v]));
    let mut load = vec![0u64; k];
    let mut labels = vec![0; node_w.len()];
    for v in order {
        let p = (0..k).min_by_key(|&p| (load[p], p)).unwrap_or(0);
        labels[v] = p;
        load[p] += node_w[v];
    }
    labels
}
