//! hMETIS hypergraph files.
//!
//! Two dialects are written:
//!
//! * the legacy dialect: header `E N 1`, one `weight pin pin ...` line
//!   per hyperedge (1-based pins), then one node weight per line. Strict
//!   hMETIS readers treat fmt `1` as edge weights only and ignore the
//!   trailing node weights.
//! * standard fmt `11`: same layout, but the header declares node weights.

use std::fmt::Write as _;

use thiserror::Error;

use super::{normalize_weights, round_weight, EdgeKind, Hyperedge, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgrMode {
    /// Raw weights, header flag `1`.
    Raw,
    /// Normalized hyperedge weights, header flag `1`.
    Normalized,
    /// Normalized hyperedge weights, header flag `11`.
    Standard,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HgrError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line}: node {node} out of range 1..={num_nodes}")]
    PinOutOfRange { line: usize, node: usize, num_nodes: usize },
    #[error("expected {expected} hyperedges, found {found}")]
    MissingEdges { expected: usize, found: usize },
    #[error("expected {expected} node weights, found {found}")]
    MissingNodeWeights { expected: usize, found: usize },
    #[error("line {0}: unexpected trailing content")]
    Trailing(usize),
}

pub fn write_hgr(hg: &Hypergraph, mode: HgrMode) -> String {
    let normalized;
    let (src, fmt) = match mode {
        HgrMode::Raw => (hg, "1"),
        HgrMode::Normalized => {
            normalized = normalize_weights(hg);
            (&normalized, "1")
        }
        HgrMode::Standard => {
            normalized = normalize_weights(hg);
            (&normalized, "11")
        }
    };
    let mut out = format!("{} {} {}\n", src.num_edges(), src.num_nodes(), fmt);
    for e in src.edges() {
        let _ = write!(out, "{}", e.int_weight());
        for p in &e.pins {
            let _ = write!(out, " {}", p + 1);
        }
        out.push('\n');
    }
    for &w in src.node_weights() {
        let _ = writeln!(out, "{}", round_weight(w));
    }
    out
}

fn parse_num(tok: &str, line: usize) -> Result<u64, HgrError> {
    tok.parse().map_err(|_| HgrError::Line {
        line,
        msg: format!("expected an integer, found `{tok}`"),
    })
}

/// Reads any of the written dialects, plus plain hMETIS fmt `0`/`10`.
/// Hyperedge kinds are not stored in the file and come back as
/// [`EdgeKind::Unknown`].
pub fn read_hgr(text: &str) -> Result<Hypergraph, HgrError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (_, header) = lines.next().ok_or_else(|| HgrError::Header("empty input".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if !(2..=3).contains(&toks.len()) {
        return Err(HgrError::Header(format!("`{header}`")));
    }
    let num_edges = toks[0]
        .parse::<usize>()
        .map_err(|_| HgrError::Header(format!("bad hyperedge count `{}`", toks[0])))?;
    let num_nodes = toks[1]
        .parse::<usize>()
        .map_err(|_| HgrError::Header(format!("bad node count `{}`", toks[1])))?;
    let fmt = toks.get(2).copied().unwrap_or("0");
    let (edge_weights, node_weights) = match fmt {
        "0" => (false, Some(false)),
        "1" => (true, None),
        "10" => (false, Some(true)),
        "11" => (true, Some(true)),
        other => return Err(HgrError::Header(format!("unsupported fmt `{other}`"))),
    };

    let mut edges = Vec::with_capacity(num_edges);
    for found in 0..num_edges {
        let (line, l) = lines.next().ok_or(HgrError::MissingEdges {
            expected: num_edges,
            found,
        })?;
        let mut toks = l.split_whitespace();
        let weight = if edge_weights {
            parse_num(toks.next().unwrap_or(""), line)?
        } else {
            1
        };
        let pins = toks
            .map(|t| {
                let p = parse_num(t, line)? as usize;
                if p == 0 || p > num_nodes {
                    return Err(HgrError::PinOutOfRange {
                        line,
                        node: p,
                        num_nodes,
                    });
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if pins.is_empty() {
            return Err(HgrError::Line {
                line,
                msg: "hyperedge without pins".into(),
            });
        }
        edges.push(Hyperedge {
            pins,
            weight: weight as f64,
            kind: EdgeKind::Unknown,
        });
    }

    let rest: Vec<(usize, &str)> = lines.collect();
    let read_weights = match node_weights {
        Some(required) => required,
        // Legacy dialect: node weights follow if present.
        None => !rest.is_empty(),
    };
    let mut weights = vec![1.0; num_nodes];
    let mut consumed = 0;
    if read_weights {
        if rest.len() < num_nodes {
            return Err(HgrError::MissingNodeWeights {
                expected: num_nodes,
                found: rest.len(),
            });
        }
        for (w, &(line, l)) in weights.iter_mut().zip(&rest) {
            *w = parse_num(l, line)? as f64;
        }
        consumed = num_nodes;
    }
    if let Some(&(line, _)) = rest.get(consumed) {
        return Err(HgrError::Trailing(line));
    }

    Ok(Hypergraph::new(weights, edges).expect("pins validated while parsing"))
}
