use super::graph::SolverGraph;
use super::refine;
use crate::rng::SplitMix64;

const GROWING_TRIES: usize = 4;

/// Recursive bisection into `k` parts. Each bisection level gets the
/// imbalance `(1 + eps)^(1 / ceil(log2 k)) - 1` so the compounded slack
/// stays within `eps`.
pub(crate) fn recursive_bisection(g: &SolverGraph, k: usize, imbalance: f64, rng: &mut SplitMix64) -> Vec<usize> {
    let depth = (k as f64).log2().ceil().max(1.0);
    let eps_level = (1.0 + imbalance).powf(1.0 / depth) - 1.0;
    let mut labels = vec![0; g.num_nodes()];
    let nodes: Vec<usize> = (0..g.num_nodes()).collect();
    split(g, &nodes, k, 0, eps_level, rng, &mut labels);
    labels
}

fn split(
    g: &SolverGraph,
    nodes: &[usize],
    k: usize,
    offset: usize,
    eps: f64,
    rng: &mut SplitMix64,
    labels: &mut [usize],
) {
    if k == 1 || nodes.is_empty() {
        for &v in nodes {
            labels[v] = offset;
        }
        return;
    }
    let k0 = k / 2;
    let k1 = k - k0;
    let sub = g.induced(nodes);
    let total = sub.total_weight() as f64;
    let target0 = total * k0 as f64 / k as f64;
    let caps = [(1.0 + eps) * target0.ceil(), (1.0 + eps) * (total - target0).ceil()];
    let mut side = bisect(&sub, target0, &caps, rng);
    ensure_min_count(&mut side, 0, k0);
    ensure_min_count(&mut side, 1, k1);

    let left: Vec<usize> = nodes
        .iter()
        .zip(&side)
        .filter(|(_, &s)| s == 0)
        .map(|(&v, _)| v)
        .collect();
    let right: Vec<usize> = nodes
        .iter()
        .zip(&side)
        .filter(|(_, &s)| s == 1)
        .map(|(&v, _)| v)
        .collect();
    split(g, &left, k0, offset, eps, rng, labels);
    split(g, &right, k1, offset + k0, eps, rng, labels);
}

/// Each side must keep at least as many nodes as parts it will be split
/// into.
fn ensure_min_count(side: &mut [usize], s: usize, need: usize) {
    let mut have = side.iter().filter(|&&x| x == s).count();
    for x in side.iter_mut() {
        if have >= need {
            break;
        }
        if *x != s {
            *x = s;
            have += 1;
        }
    }
}

/// Best of several greedy-growing bisections, each refined by 2-way FM.
fn bisect(g: &SolverGraph, target0: f64, caps: &[f64; 2], rng: &mut SplitMix64) -> Vec<usize> {
    let n = g.num_nodes();
    let mut best: Option<(bool, u64, Vec<usize>)> = None;
    for _ in 0..GROWING_TRIES {
        let start = rng.below(n);
        let mut side = grow(g, start, target0, caps[0]);
        refine::rebalance_caps(g, &mut side, caps);
        refine::fm_refine_caps(g, &mut side, caps);
        let w = g.part_weights(&side, 2);
        let balanced = w[0] as f64 <= caps[0] && w[1] as f64 <= caps[1];
        let cost = g.km1(&side, 2);
        let better = match &best {
            None => true,
            Some((b_bal, b_cost, _)) => (balanced && !b_bal) || (balanced == *b_bal && cost < *b_cost),
        };
        if better {
            best = Some((balanced, cost, side));
        }
    }
    best.map(|b| b.2).unwrap_or_else(|| vec![0; n])
}

/// Grows side 0 from `start`, always absorbing the side-1 node with the
/// best km1 gain, until side 0 reaches `target0`.
fn grow(g: &SolverGraph, start: usize, target0: f64, cap0: f64) -> Vec<usize> {
    let n = g.num_nodes();
    let mut side = vec![1usize; n];
    // pins of each edge on side 0
    let mut in0 = vec![0u32; g.pins.len()];
    let mut w0 = 0u64;

    let take = |v: usize, side: &mut Vec<usize>, in0: &mut Vec<u32>, w0: &mut u64| {
        side[v] = 0;
        *w0 += g.node_w[v];
        for &e in &g.incident[v] {
            in0[e as usize] += 1;
        }
    };
    take(start, &mut side, &mut in0, &mut w0);

    while (w0 as f64) < target0 {
        let mut pick: Option<(i64, usize)> = None;
        for v in (0..n).filter(|&v| side[v] == 1) {
            if (w0 + g.node_w[v]) as f64 > cap0 {
                continue;
            }
            let mut gain = 0i64;
            for &e in &g.incident[v] {
                let size = g.pins[e as usize].len() as u32;
                let w = g.edge_w[e as usize] as i64;
                let on1 = size - in0[e as usize];
                if on1 == 1 {
                    gain += w;
                }
                if in0[e as usize] == 0 {
                    gain -= w;
                }
            }
            if pick.is_none_or(|(bg, _)| gain > bg) {
                pick = Some((gain, v));
            }
        }
        let Some((_, v)) = pick else { break };
        take(v, &mut side, &mut in0, &mut w0);
    }
    side
}
