//! k-way Fiduccia-Mattheyses refinement with exact km1 gains.
//!
//! Every pass moves each boundary node at most once, always taking the
//! feasible move of highest gain (lower node index, then lower target part
//! on ties), and then rolls back to the best prefix. Passes repeat until one
//! yields no improvement. Gains are recomputed exactly for every node whose
//! neighbourhood changed.

use super::graph::SolverGraph;

struct State<'a> {
    g: &'a SolverGraph,
    k: usize,
    caps: &'a [f64],
    part_w: Vec<u64>,
    /// `pin_count[e * k + p]`: pins of edge `e` in part `p`.
    pin_count: Vec<u32>,
}

impl<'a> State<'a> {
    fn new(g: &'a SolverGraph, labels: &[usize], k: usize, caps: &'a [f64]) -> Self {
        let mut pin_count = vec![0u32; g.pins.len() * k];
        for (e, pins) in g.pins.iter().enumerate() {
            for &v in pins {
                pin_count[e * k + labels[v as usize]] += 1;
            }
        }
        State {
            g,
            k,
            caps,
            part_w: g.part_weights(labels, k),
            pin_count,
        }
    }

    fn pc(&self, e: u32, p: usize) -> u32 {
        self.pin_count[e as usize * self.k + p]
    }

    fn fits(&self, v: usize, t: usize) -> bool {
        (self.part_w[t] + self.g.node_w[v]) as f64 <= self.caps[t]
    }

    fn is_boundary(&self, v: usize, src: usize) -> bool {
        self.g.incident[v]
            .iter()
            .any(|&e| (self.pc(e, src) as usize) < self.g.pins[e as usize].len())
    }

    /// Gains of moving `v` out of `src` into every part (entry `src` unused).
    fn gains(&self, v: usize, src: usize) -> Vec<i64> {
        let mut base = 0i64;
        let mut gains = vec![0i64; self.k];
        for &e in &self.g.incident[v] {
            let w = self.g.edge_w[e as usize] as i64;
            if self.pc(e, src) == 1 {
                base += w;
            }
            for (t, gain) in gains.iter_mut().enumerate() {
                if t != src && self.pc(e, t) == 0 {
                    *gain -= w;
                }
            }
        }
        for g in &mut gains {
            *g += base;
        }
        gains
    }

    fn best_move(&self, v: usize, src: usize) -> Option<(i64, usize)> {
        if !self.is_boundary(v, src) {
            return None;
        }
        let gains = self.gains(v, src);
        (0..self.k)
            .filter(|&t| t != src && self.fits(v, t))
            .map(|t| (gains[t], t))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
    }

    fn apply(&mut self, labels: &mut [usize], v: usize, t: usize) {
        let src = labels[v];
        for &e in &self.g.incident[v] {
            self.pin_count[e as usize * self.k + src] -= 1;
            self.pin_count[e as usize * self.k + t] += 1;
        }
        self.part_w[src] -= self.g.node_w[v];
        self.part_w[t] += self.g.node_w[v];
        labels[v] = t;
    }
}

pub(crate) fn fm_refine(g: &SolverGraph, labels: &mut [usize], k: usize, cap: f64) {
    let caps = vec![cap; k];
    fm_refine_caps(g, labels, &caps);
}

pub(crate) fn fm_refine_caps(g: &SolverGraph, labels: &mut [usize], caps: &[f64]) {
    let k = caps.len();
    let n = g.num_nodes();
    if k < 2 || n == 0 {
        return;
    }
    let stall_limit = (n / 8).max(64);
    let mut state = State::new(g, labels, k, caps);

    loop {
        let mut locked = vec![false; n];
        let mut cached: Vec<Option<(i64, usize)>> = (0..n).map(|v| state.best_move(v, labels[v])).collect();
        let mut dirty: Vec<usize> = Vec::new();
        let mut is_dirty = vec![false; n];
        let mut moves: Vec<(usize, usize)> = Vec::new();
        let (mut cum, mut best, mut best_len, mut since_best) = (0i64, 0i64, 0usize, 0usize);

        loop {
            for v in dirty.drain(..) {
                is_dirty[v] = false;
                if !locked[v] {
                    cached[v] = state.best_move(v, labels[v]);
                }
            }
            let pick = cached
                .iter()
                .enumerate()
                .filter_map(|(v, c)| c.map(|(gain, t)| (gain, v, t)))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((gain, v, t)) = pick else { break };

            moves.push((v, labels[v]));
            state.apply(labels, v, t);
            locked[v] = true;
            cached[v] = None;
            cum += gain;
            if cum > best {
                best = cum;
                best_len = moves.len();
                since_best = 0;
            } else {
                since_best += 1;
                if since_best > stall_limit {
                    break;
                }
            }
            // Weights changed, so feasibility of every cached move may have
            // changed too; neighbours additionally need fresh gains.
            for &e in &g.incident[v] {
                for &u in &g.pins[e as usize] {
                    let u = u as usize;
                    if !is_dirty[u] {
                        is_dirty[u] = true;
                        dirty.push(u);
                    }
                }
            }
            for (u, c) in cached.iter_mut().enumerate() {
                if let Some((_, tt)) = *c {
                    if !state.fits(u, tt) && !is_dirty[u] {
                        is_dirty[u] = true;
                        dirty.push(u);
                    }
                }
            }
        }

        for &(v, from) in moves[best_len..].iter().rev() {
            state.apply(labels, v, from);
        }
        if best <= 0 {
            break;
        }
    }
}

/// Moves nodes out of overweight parts until every part fits, choosing the
/// highest-gain feasible move each time. Leaves `labels` unbalanced only if
/// no feasible move exists.
pub(crate) fn rebalance(g: &SolverGraph, labels: &mut [usize], k: usize, cap: f64) {
    let caps = vec![cap; k];
    rebalance_caps(g, labels, &caps);
}

pub(crate) fn rebalance_caps(g: &SolverGraph, labels: &mut [usize], caps: &[f64]) {
    let k = caps.len();
    let mut state = State::new(g, labels, k, caps);
    loop {
        let over = (0..k)
            .filter(|&p| state.part_w[p] as f64 > caps[p])
            .max_by(|&a, &b| state.part_w[a].cmp(&state.part_w[b]).then(b.cmp(&a)));
        let Some(p) = over else { return };
        let mut pick: Option<(i64, usize, usize)> = None;
        for v in (0..g.num_nodes()).filter(|&v| labels[v] == p) {
            let gains = state.gains(v, p);
            for t in (0..k).filter(|&t| t != p && state.fits(v, t)) {
                if pick.is_none_or(|(bg, _, _)| gains[t] > bg) {
                    pick = Some((gains[t], v, t));
                }
            }
        }
        match pick {
            Some((_, v, t)) => state.apply(labels, v, t),
            None => return,
        }
    }
}
