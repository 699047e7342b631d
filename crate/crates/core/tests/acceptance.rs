//! Acceptance checks for the Circuit S walkthrough and the randomized
//! invariants. Prints one PASS/FAIL line per criterion and exits non-zero if
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qpart::baseline::{block_partition, load_fixture, remap_groups, BaselineConfig};
use qpart::circuit::{parse_circuit, serialize_circuit, Benchmark, Circuit, Gate};
use qpart::hypergraph::{circuit_to_hypergraph, normalize_weights, write_hgr, HgrMode};
use qpart::metrics::{cut_qubits, estimate_swaps, fidelity, total_fidelity, validate_gate_counts, GateCounts};
use qpart::noise::ErrorModel;
use qpart::par::Execution;
use qpart::partitioner::{
    check_balance, dynamic_k, km1, max_part_weight, partition, PartitionAssignment, PartitionError, SolverConfig,
};
use qpart::pipeline::{build_dependency_graph, create_trimmed_partitions, merge_partitions, Partition};
use qpart::rng::SplitMix64;
use qpart::workflow::{run_compare, CircuitSource, RunConfig};

mod common;
use common::{circuit, labeled, map_invariants_hold, packable, reconstruct};

const GOLDEN_HGR: &str = include_str!("../fixtures/circuit_s.hgr");
const QUICK_S: &str = include_str!("../fixtures/quick_s.json");

const FIDELITY_TOL: f64 = 5e-4;
const PROPERTY_CASES: u32 = 200;

const REFERENCE_LABELS: [usize; 22] = [0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1];

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, id: &str, name: &str, pass: bool, detail: String) {
        println!("[{}] {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }
}

fn circuit_s() -> Circuit {
    Benchmark::S.circuit()
}

fn reference_parts() -> Vec<Partition> {
    let a = PartitionAssignment::new(REFERENCE_LABELS.to_vec(), 2).unwrap();
    create_trimmed_partitions(&circuit_s(), &a).unwrap().partitions
}

fn baseline_parts() -> Vec<Partition> {
    let c = circuit_s();
    remap_groups(&c, &load_fixture(QUICK_S, &c).unwrap()).unwrap()
}

fn map(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn h(q: usize) -> Gate {
    Gate::h(q)
}

fn cx(a: usize, b: usize) -> Gate {
    Gate::cnot(a, b)
}

fn c1_golden_hgr(r: &mut Report) {
    let raw = write_hgr(
        &circuit_to_hypergraph(&circuit_s(), &ErrorModel::default()),
        HgrMode::Raw,
    );
    let lines = raw.lines().count();
    r.check(
        "C1",
        "hMETIS golden file",
        raw == GOLDEN_HGR,
        format!("{lines} lines, header {:?}", raw.lines().next().unwrap_or("")),
    );
}

fn c2_fidelity(r: &mut Report) {
    let m = ErrorModel::default();
    let cases = [
        ((7, 4, 4), 0.4370),
        ((0, 1, 3), 0.5987),
        ((4, 1, 0), 0.9462),
        ((1, 1, 0), 0.9491),
        ((0, 1, 1), 0.8145),
        ((0, 2, 0), 0.9025),
    ];
    let mut worst = 0.0f64;
    for ((h, cnot, swaps), want) in cases {
        let got = fidelity(
            &GateCounts {
                h,
                cnot,
                ..GateCounts::default()
            },
            swaps,
            &m,
        );
        worst = worst.max((got - want).abs());
    }

    let method_total = |parts: &[Partition]| {
        let est = estimate_swaps(parts, false, 42);
        let fs: Vec<f64> = parts
            .iter()
            .zip(&est.per_partition_attribution)
            .map(|(p, &s)| fidelity(&GateCounts::of(p.subcircuit()), s, &m))
            .collect();
        total_fidelity(&fs)
    };
    let base = method_total(&baseline_parts());
    let hyper = method_total(&reference_parts());
    worst = worst.max((base - 0.1724).abs()).max((hyper - 0.5916).abs());
    r.check(
        "C2",
        "fidelity formula",
        worst <= FIDELITY_TOL,
        format!("baseline {base:.4}, hypergraph {hyper:.4}, max deviation {worst:.1e} (tol {FIDELITY_TOL:.0e})"),
    );
}

fn c3_swaps(r: &mut Report) {
    let base = estimate_swaps(&baseline_parts(), false, 42);
    let hyper = estimate_swaps(&reference_parts(), false, 42);
    r.check(
        "C3",
        "SWAP estimation",
        base.total == 8 && base.per_partition_attribution == [4, 3, 0, 0, 1, 0] && hyper.total == 0,
        format!(
            "baseline {} {:?}, hypergraph {}",
            base.total, base.per_partition_attribution, hyper.total
        ),
    );
}

fn c4_cut_qubits(r: &mut Report) {
    let base = cut_qubits(&baseline_parts());
    let hyper = cut_qubits(&reference_parts());
    r.check(
        "C4",
        "cut qubits",
        base == BTreeSet::from([0, 1, 4, 5]) && hyper == BTreeSet::from([0, 1]),
        format!("baseline {base:?}, hypergraph {hyper:?}"),
    );
}

fn c5_trimming(r: &mut Report) {
    let parts = reference_parts();
    let maps_ok = parts.len() == 2
        && *parts[0].qubit_map() == map(&[(0, 0), (1, 1), (2, 2), (3, 3)])
        && *parts[1].qubit_map() == map(&[(0, 0), (1, 1), (4, 2), (5, 3)]);
    // listed order; the circuit itself applies H(3) first and H(1) later
    let p0 = vec![
        h(0),
        h(1),
        h(3),
        h(0),
        cx(0, 2),
        h(0),
        h(2),
        cx(1, 0),
        h(2),
        h(2),
        cx(3, 0),
    ];
    // global (5,0) (1,5) (5,4) (0,4) H4 (0,5) H4 (1,5) H4 H4 (4,5) under {0:0,1:1,4:2,5:3}
    let p1 = vec![
        cx(3, 0),
        cx(1, 3),
        cx(3, 2),
        cx(0, 2),
        h(2),
        cx(0, 3),
        h(2),
        cx(1, 3),
        h(2),
        h(2),
        cx(2, 3),
    ];
    let wires_ok = parts.len() == 2 && same_wires(&parts[0], &p0) && same_wires(&parts[1], &p1);
    let literal = parts.len() == 2 && parts[0].subcircuit().gates() == p0 && parts[1].subcircuit().gates() == p1;
    r.check(
        "C5",
        "trimming",
        maps_ok && wires_ok,
        format!(
            "maps {:?}, gate counts {:?}, listing order identical: {literal}",
            parts.iter().map(|p| p.qubit_map().clone()).collect::<Vec<_>>(),
            parts.iter().map(Partition::len).collect::<Vec<_>>()
        ),
    );
}

/// Same gate sequence on every wire, so the two lists differ at most by
/// swapping adjacent gates on disjoint qubits.
fn same_wires(p: &Partition, expected: &[Gate]) -> bool {
    let wires = |gates: &[Gate]| {
        let mut w: BTreeMap<usize, Vec<Gate>> = BTreeMap::new();
        for g in gates {
            for &q in g.qubits() {
                w.entry(q).or_default().push(g.clone());
            }
        }
        w
    };
    p.subcircuit().gates().len() == expected.len() && wires(p.subcircuit().gates()) == wires(expected)
}

fn c6_merge(r: &mut Report) {
    let merged = merge_partitions(reference_parts(), 2);
    let identity: BTreeMap<usize, usize> = (0..6).map(|q| (q, q)).collect();
    let pass = merged.len() == 1 && merged[0].len() == 22 && *merged[0].qubit_map() == identity;
    r.check(
        "C6",
        "merge walkthrough",
        pass,
        format!(
            "{} partition(s), sizes {:?}",
            merged.len(),
            merged.iter().map(Partition::len).collect::<Vec<_>>()
        ),
    );
}

fn c7_dag(r: &mut Report) {
    let dag = build_dependency_graph(&reference_parts());
    let pass = dag.edges.len() == 1
        && dag.edges[0].from == 0
        && dag.edges[0].to == 1
        && dag.edges[0].shared == BTreeSet::from([0, 1]);
    let edges: Vec<String> = dag
        .edges
        .iter()
        .map(|e| format!("{}->{} {:?}", e.from, e.to, e.shared))
        .collect();
    r.check("C7", "dependency DAG", pass, edges.join(", "));
}

fn c8_dynamic_k(r: &mut Report) {
    let got = [dynamic_k(22, 6, 4), dynamic_k(55, 10, 6), dynamic_k(88, 24, 8)];
    let sizes: Vec<(usize, usize)> = Benchmark::ALL
        .iter()
        .map(|b| (b.circuit().len(), b.circuit().num_qubits()))
        .collect();
    r.check(
        "C8",
        "dynamic k",
        got == [2, 3, 4] && sizes == [(22, 6), (55, 10), (88, 24)],
        format!("{got:?} for builtin sizes {sizes:?}"),
    );
}

fn c9_depth(r: &mut Report) {
    let base: Vec<usize> = baseline_parts().iter().map(|p| p.subcircuit().depth()).collect();
    let hyper: Vec<usize> = reference_parts().iter().map(|p| p.subcircuit().depth()).collect();
    r.check(
        "C9",
        "depth",
        base == [7, 1, 5, 2, 1, 2] && hyper == [6, 9],
        format!("baseline {base:?}, hypergraph {hyper:?}"),
    );
}

/// Edge lists and node weights read back from standard hMETIS text.
fn parse_standard_hgr(text: &str) -> (Vec<(u64, Vec<usize>)>, Vec<u64>) {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('%'));
    let header: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let (m, n) = (header[0], header[1]);
    let nums = |l: &str| -> Vec<u64> { l.split_whitespace().map(|t| t.parse().unwrap()).collect() };
    let edges = (0..m)
        .map(|_| {
            let v = nums(lines.next().unwrap());
            (v[0], v[1..].iter().map(|&p| p as usize - 1).collect())
        })
        .collect();
    let weights = (0..n).map(|_| nums(lines.next().unwrap())[0]).collect();
    (edges, weights)
}

fn lambda_km1(edges: &[(u64, Vec<usize>)], labels: &[usize]) -> u64 {
    edges
        .iter()
        .map(|(w, pins)| {
            let lambda = pins.iter().map(|&p| labels[p]).collect::<BTreeSet<_>>().len() as u64;
            w * (lambda - 1)
        })
        .sum()
}

fn c10_solver_bound(r: &mut Report) {
    let hg = normalize_weights(&circuit_to_hypergraph(&circuit_s(), &ErrorModel::default()));
    let (edges, weights) = parse_standard_hgr(&write_hgr(&hg, HgrMode::Standard));
    let reference = lambda_km1(&edges, &REFERENCE_LABELS);

    let config = SolverConfig::new(2);
    let (pass, detail) = match partition(&hg, &config) {
        Ok(a) => {
            let ours = lambda_km1(&edges, a.labels());
            let mut load = [0u64; 2];
            for (w, &l) in weights.iter().zip(a.labels()) {
                load[l] += w;
            }
            let total: u64 = weights.iter().sum();
            let cap = 1.05 * total.div_ceil(2) as f64;
            let balanced = load.iter().all(|&w| w as f64 <= cap);
            (
                balanced && ours <= reference,
                format!("km1 {ours} vs reference labels {reference}, loads {load:?} cap {cap}"),
            )
        }
        Err(e) => (false, format!("solver error: {e}")),
    };
    r.check("C10", "solver quality bound", pass, detail);
}

fn run_property<S: Strategy>(
    r: &mut Report,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let outcome = runner.run(&strategy, test);
    let detail = match &outcome {
        Ok(()) => format!("{PROPERTY_CASES} cases"),
        Err(e) => e.to_string(),
    };
    r.check("C11", name, outcome.is_ok(), detail);
}

fn c11_properties(r: &mut Report) {
    run_property(r, "trim conserves gates", labeled(40), |(c, a)| {
        let parts = create_trimmed_partitions(&c, &a).unwrap().partitions;
        prop_assert_eq!(parts.iter().map(Partition::len).sum::<usize>(), c.len());
        prop_assert!(validate_gate_counts(&c, &parts));
        let original: Vec<Option<Gate>> = c.gates().iter().cloned().map(Some).collect();
        prop_assert_eq!(reconstruct(&parts, c.len()), original);
        Ok(())
    });

    run_property(
        r,
        "block partition conserves gates",
        (circuit(40), 3usize..7),
        |(c, bs)| {
            let groups = block_partition(&c, BaselineConfig::new(bs).unwrap()).unwrap();
            let parts = remap_groups(&c, &groups).unwrap();
            prop_assert_eq!(parts.iter().map(Partition::len).sum::<usize>(), c.len());
            prop_assert!(validate_gate_counts(&c, &parts));
            prop_assert!(parts.iter().all(|p| p.qubit_map().len() <= bs));
            Ok(())
        },
    );

    run_property(
        r,
        "qubit maps are order-preserving bijections",
        labeled(40),
        |(c, a)| {
            for p in create_trimmed_partitions(&c, &a).unwrap().partitions {
                prop_assert!(map_invariants_hold(&p));
                let active: BTreeSet<usize> = p
                    .origin()
                    .iter()
                    .flat_map(|&i| c.gates()[i].qubits().to_vec())
                    .collect();
                let globals: Vec<usize> = p.qubit_map().keys().copied().collect();
                prop_assert_eq!(globals, active.into_iter().collect::<Vec<_>>());
                prop_assert!(p.origin().windows(2).all(|w| w[0] < w[1]));
            }
            Ok(())
        },
    );

    run_property(r, "parse of serialize is identity", circuit(40), |c| {
        prop_assert_eq!(parse_circuit(&serialize_circuit(&c)).unwrap(), c);
        Ok(())
    });

    run_property(
        r,
        "km1 relabel invariance and scaling",
        (labeled(40), any::<u64>(), 1u32..5),
        |((c, a), seed, factor)| {
            let hg = circuit_to_hypergraph(&c, &ErrorModel::default());
            let mut perm: Vec<usize> = (0..a.k()).collect();
            SplitMix64::new(seed).shuffle(&mut perm);
            let relabeled = PartitionAssignment::new(a.labels().iter().map(|&l| perm[l]).collect(), a.k()).unwrap();
            prop_assert_eq!(km1(&hg, &a), km1(&hg, &relabeled));
            prop_assert_eq!(
                km1(&hg.scale_edge_weights(factor as f64), &a),
                factor as u64 * km1(&hg, &a)
            );
            Ok(())
        },
    );

    run_property(
        r,
        "solver outputs are balanced",
        (circuit(60), 2usize..5, any::<u64>()),
        |(c, k, seed)| {
            if c.len() < k {
                return Ok(());
            }
            let hg = normalize_weights(&circuit_to_hypergraph(&c, &ErrorModel::default()));
            let mut config = SolverConfig::new(k);
            config.seed = seed;
            config.attempts = 3;
            match partition(&hg, &config) {
                Ok(a) => prop_assert!(check_balance(&hg, &a, config.imbalance)),
                Err(PartitionError::NoBalancedSolution { .. }) => {
                    let w = hg.int_node_weights();
                    let cap = max_part_weight(w.iter().sum(), k, config.imbalance);
                    prop_assert!(!packable(&w, k, cap), "a balanced assignment exists");
                }
                Err(e) => prop_assert!(false, "unexpected error {}", e),
            }
            Ok(())
        },
    );

    run_property(r, "dependency DAG is acyclic", labeled(40), |(c, a)| {
        let parts = create_trimmed_partitions(&c, &a).unwrap().partitions;
        let dag = build_dependency_graph(&parts);
        let order = dag.topological_order();
        prop_assert!(order.is_some());
        let order = order.unwrap();
        let mut pos = vec![0; parts.len()];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        prop_assert!(dag.edges.iter().all(|e| pos[e.from] < pos[e.to]));
        Ok(())
    });

    run_property(
        r,
        "compare output is deterministic",
        (circuit(40), any::<u64>(), any::<bool>()),
        |(c, seed, heuristic)| {
            if c.len() < 2 {
                return Ok(());
            }
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("c.txt");
            fs::write(&path, serialize_circuit(&c)).unwrap();
            let mut config = RunConfig::new(CircuitSource::File(path));
            config.block_size = Some(3);
            config.k = Some(2);
            config.seed = seed;
            config.heuristic = heuristic;
            config.attempts = 3;
            let outcome = |config: &RunConfig| match run_compare(config) {
                Ok(r) => r.to_json_without_timings(),
                Err(e) => e.to_string(),
            };
            let first = outcome(&config);
            prop_assert_eq!(&first, &outcome(&config));
            config.execution = Execution::Sequential;
            prop_assert_eq!(first, outcome(&config));
            Ok(())
        },
    );
}

fn main() -> ExitCode {
    let mut r = Report { failures: 0 };
    c1_golden_hgr(&mut r);
    c2_fidelity(&mut r);
    c3_swaps(&mut r);
    c4_cut_qubits(&mut r);
    c5_trimming(&mut r);
    c6_merge(&mut r);
    c7_dag(&mut r);
    c8_dynamic_k(&mut r);
    c9_depth(&mut r);
    c10_solver_bound(&mut r);
    c11_properties(&mut r);
    if r.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} check(s) failed", r.failures);
        ExitCode::FAILURE
    }
}
