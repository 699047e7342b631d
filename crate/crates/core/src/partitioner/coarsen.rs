use super::graph::SolverGraph;
use crate::rng::SplitMix64;

/// Coarsening stops once a level has at most this many nodes per part.
const NODES_PER_PART: usize = 20;
/// A matching round that shrinks the graph by less than this is the last.
const MIN_SHRINK: f64 = 0.05;
/// Hyperedges larger than this are ignored when rating neighbours.
const MAX_RATED_EDGE: usize = 1000;

pub(crate) struct Level {
    pub graph: SolverGraph,
    /// Fine node -> coarse node.
    pub map: Vec<u32>,
}

impl Level {
    pub fn project(&self, coarse_labels: &[usize]) -> Vec<usize> {
        self.map.iter().map(|&c| coarse_labels[c as usize]).collect()
    }
}

/// Builds the coarsening hierarchy, finest first. Empty when `g` is already
/// small enough.
pub(crate) fn coarsen(g: &SolverGraph, k: usize, cap: f64, rng: &mut SplitMix64) -> Vec<Level> {
    let limit = NODES_PER_PART * k;
    let max_cluster = ((cap / 4.0).floor() as u64).max(1);
    let mut levels: Vec<Level> = Vec::new();
    loop {
        let cur = levels.last().map_or(g, |l| &l.graph);
        let n = cur.num_nodes();
        if n <= limit {
            break;
        }
        let (map, coarse_n) = heavy_edge_matching(cur, max_cluster, rng);
        if (n - coarse_n) as f64 <= n as f64 * MIN_SHRINK {
            break;
        }
        let graph = contract(cur, &map, coarse_n);
        levels.push(Level { graph, map });
    }
    levels
}

/// Pairs each node with the unmatched neighbour maximising
/// `sum over shared edges of w(e) / (|e| - 1)`, visiting nodes in a
/// seeded random order. Ties go to the lower neighbour index.
fn heavy_edge_matching(g: &SolverGraph, max_cluster: u64, rng: &mut SplitMix64) -> (Vec<u32>, usize) {
    let n = g.num_nodes();
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);

    const UNMATCHED: u32 = u32::MAX;
    let mut mate = vec![UNMATCHED; n];
    let mut rating = vec![0.0f64; n];
    let mut touched: Vec<usize> = Vec::new();

    for u in order {
        if mate[u] != UNMATCHED {
            continue;
        }
        for &e in &g.incident[u] {
            let pins = &g.pins[e as usize];
            if pins.len() > MAX_RATED_EDGE {
                continue;
            }
            let r = g.edge_w[e as usize] as f64 / (pins.len() - 1) as f64;
            for &v in pins {
                let v = v as usize;
                if v != u && mate[v] == UNMATCHED {
                    if rating[v] == 0.0 {
                        touched.push(v);
                    }
                    rating[v] += r;
                }
            }
        }
        let mut best: Option<usize> = None;
        for &v in &touched {
            if g.node_w[u] + g.node_w[v] > max_cluster {
                continue;
            }
            best = match best {
                Some(b) if rating[b] > rating[v] || (rating[b] == rating[v] && b < v) => Some(b),
                _ => Some(v),
            };
        }
        for &v in &touched {
            rating[v] = 0.0;
        }
        touched.clear();
        match best {
            Some(v) => {
                mate[u] = v as u32;
                mate[v] = u as u32;
            }
            None => mate[u] = u as u32,
        }
    }

    let mut map = vec![UNMATCHED; n];
    let mut next = 0u32;
    for v in 0..n {
        if map[v] == UNMATCHED {
            map[v] = next;
            map[mate[v] as usize] = next;
            next += 1;
        }
    }
    (map, next as usize)
}

fn contract(g: &SolverGraph, map: &[u32], coarse_n: usize) -> SolverGraph {
    let mut node_w = vec![0u64; coarse_n];
    for (v, &c) in map.iter().enumerate() {
        node_w[c as usize] += g.node_w[v];
    }
    let edges = g
        .pins
        .iter()
        .zip(&g.edge_w)
        .map(|(p, &w)| (p.iter().map(|&v| map[v as usize]).collect(), w));
    SolverGraph::build(node_w, edges)
}
