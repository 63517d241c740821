//! Acceptance suite. Each test prints one `PASS`/`FAIL` line to stderr.
//!
//! Run with `cargo test -p epinet --test acceptance -- --test-threads=1` for
//! undisturbed timings. The email-Eu-core check reads `email-Eu-core.txt` and
//! `email-Eu-core-department-labels.txt` from `$EPINET_EU_CORE_DIR`
//! (default `crates/epinet/tests/data`).

use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use epinet::bench::{medians, run_scaling_benchmark, BenchOptions, BenchPlan};
use epinet::core::oracle::{brute_force_h, brute_force_mk, brute_force_s};
use epinet::core::{
    iteratively_prune, random_digraph, Crowd, Direction, ObserverParams, PruneConfig, TestimonialGraph,
    DEFAULT_S_LATTICE,
};
use epinet::{load_attributes, load_edge_list, profile_all_parallel, render_sullivan_plot, PlotSpec};

const SWEEP_GRAPHS: u64 = 510;
const PROBABILITIES: [f64; 3] = [0.1, 0.3, 0.6];

const EU_NODES: usize = 1005;
const EU_EDGES: usize = 25571;
const EU_TIME_LIMIT: Duration = Duration::from_secs(15 * 60);
const EU_PI_THRESHOLD: u64 = 100;
const EU_PI_FRACTION: f64 = 0.40;
const EU_PI_TOLERANCE: f64 = 0.10;
const EU_MAX_D: u32 = 42;

const CAPACITY_TIME_LIMIT: Duration = Duration::from_secs(30 * 60);

static TIMING: Mutex<()> = Mutex::new(());

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{verdict}] criterion {id}: {name}: {detail}");
}

fn check(id: u32, name: &str, failures: &[String], detail: &str) {
    let detail = match failures.first() {
        Some(first) => format!("{} failure(s), first: {first}", failures.len()),
        None => detail.to_string(),
    };
    report(id, name, failures.is_empty(), &detail);
    assert!(failures.is_empty(), "criterion {id}: {detail}");
}

/// `(seed, n, p, graph)` for the shared random sweep.
fn sweep() -> impl Iterator<Item = (u64, usize, f64, TestimonialGraph)> {
    (0..SWEEP_GRAPHS).map(|seed| {
        let n = 3 + (seed % 10) as usize;
        let p = PROBABILITIES[((seed / 10) % 3) as usize];
        (seed, n, p, random_digraph(n, p, seed).unwrap())
    })
}

fn worker_count() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[test]
fn c1_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for (seed, n, p, g) in sweep() {
        let params = ObserverParams::for_graph(&g);
        let mut crowd = Crowd::new(g.clone(), params);
        let names: Vec<String> = g.nodes().map(str::to_owned).collect();
        for node in &names {
            let at = format!("seed={seed} n={n} p={p} node={node}");
            for m in 1..=params.m_max {
                for k in 2..=params.k_max {
                    let engine = crowd.is_mk_observer(node, m, k).unwrap();
                    let oracle = brute_force_mk(&g, node, m, k, params.direction).unwrap();
                    checks += 1;
                    if engine != oracle {
                        failures.push(format!("{at} m={m} k={k}: engine {engine}, oracle {oracle}"));
                    }
                }
            }
            let (s, os) = (crowd.s_value(node).unwrap(), brute_force_s(&g, node, &params).unwrap());
            let (h, oh) = (
                crowd.h_measure(node, None).unwrap(),
                brute_force_h(&g, node, params.h_max(), params.direction).unwrap(),
            );
            checks += 2;
            if s != os {
                failures.push(format!("{at}: S engine {s}, oracle {os}"));
            }
            if h != oh {
                failures.push(format!("{at}: h engine {h}, oracle {oh}"));
            }
            let row = crowd.profile(node).unwrap();
            if (row.s, row.h) != (s, h) {
                failures.push(format!("{at}: profile ({}, {}) disagrees with ({s}, {h})", row.s, row.h));
            }
        }
    }
    check(1, "oracle equivalence", &failures, &format!("{SWEEP_GRAPHS} graphs, {checks} checks agree"));
}

#[test]
fn c2_monotonicity() {
    let mut failures = Vec::new();
    let mut positives = 0usize;
    for (seed, _, _, g) in sweep() {
        let params = ObserverParams::for_graph(&g);
        let mut crowd = Crowd::new(g.clone(), params);
        for node in g.nodes() {
            for m in 1..=params.m_max {
                for k in 2..=params.k_max {
                    if !crowd.is_mk_observer(node, m, k).unwrap() {
                        continue;
                    }
                    positives += 1;
                    if m > 1 && !crowd.is_mk_observer(node, m - 1, k).unwrap() {
                        failures.push(format!("seed={seed} node={node}: ({m},{k}) but not ({},{k})", m - 1));
                    }
                    if k > 2 && !crowd.is_mk_observer(node, m, k - 1).unwrap() {
                        failures.push(format!("seed={seed} node={node}: ({m},{k}) but not ({m},{})", k - 1));
                    }
                }
            }
        }
    }
    check(2, "monotonicity", &failures, &format!("{positives} positive (m,k) cases, no counterexample"));
}

#[test]
fn c3_s_lattice() {
    let mut failures = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (seed, _, _, g) in sweep() {
        let mut crowd = Crowd::new(g.clone(), ObserverParams::for_graph(&g));
        for row in crowd.profile_all(None).unwrap().rows() {
            seen.insert(row.s);
            if !DEFAULT_S_LATTICE.contains(&row.s) {
                failures.push(format!("seed={seed} node={}: S={}", row.node, row.s));
            }
        }
    }
    check(3, "S value lattice", &failures, &format!("observed S values {seen:?}"));
}

#[test]
fn c4_email_eu_core() {
    let _guard = TIMING.lock().unwrap_or_else(|e| e.into_inner());
    let dir = std::env::var_os("EPINET_EU_CORE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data"));
    let edges = dir.join("email-Eu-core.txt");
    let labels = dir.join("email-Eu-core-department-labels.txt");
    if !edges.is_file() || !labels.is_file() {
        let detail = format!("dataset missing: expected {} and {}", edges.display(), labels.display());
        report(4, "email-Eu-core replication", false, &detail);
        panic!("criterion 4: {detail}");
    }
    let open = |p: &PathBuf| std::io::BufReader::new(std::fs::File::open(p).unwrap());
    let mut g = load_edge_list(open(&edges), true, false).unwrap();
    let warnings = load_attributes(&mut g, open(&labels)).unwrap();
    let mut failures = Vec::new();
    if (g.node_count(), g.edge_count()) != (EU_NODES, EU_EDGES) {
        failures.push(format!("|N|={} |E|={}, expected {EU_NODES} and {EU_EDGES}", g.node_count(), g.edge_count()));
    }
    if !warnings.is_empty() {
        failures.push(format!("{} label lines name unknown nodes", warnings.len()));
    }
    let crowd = Crowd::new(g.clone(), ObserverParams::for_graph(&g));
    let started = Instant::now();
    let table = profile_all_parallel(&crowd, None, worker_count()).unwrap();
    let elapsed = started.elapsed();
    if elapsed > EU_TIME_LIMIT {
        failures.push(format!("profiling took {:.1}s, limit {}s", elapsed.as_secs_f64(), EU_TIME_LIMIT.as_secs()));
    }
    let high = table.rows().iter().filter(|r| r.pi >= EU_PI_THRESHOLD).count();
    let fraction = high as f64 / table.len() as f64;
    if (fraction - EU_PI_FRACTION).abs() > EU_PI_TOLERANCE {
        failures.push(format!("fraction with pi >= {EU_PI_THRESHOLD} is {:.3}, expected {EU_PI_FRACTION} ± {EU_PI_TOLERANCE}", fraction));
    }
    if table.max_d() > EU_MAX_D {
        failures.push(format!("max D is {}, limit {EU_MAX_D}", table.max_d()));
    }
    let detail = format!(
        "|N|={} |E|={}, profiled in {:.1}s, pi>={EU_PI_THRESHOLD} fraction {:.3}, max D {}",
        g.node_count(),
        g.edge_count(),
        elapsed.as_secs_f64(),
        fraction,
        table.max_d()
    );
    check(4, "email-Eu-core replication", &failures, &detail);
}

#[test]
fn c5_scaling_trend() {
    let _guard = TIMING.lock().unwrap_or_else(|e| e.into_inner());
    let plan = BenchPlan::new(vec![50, 100, 200, 400], vec![0.01, 0.05], 42, 3).unwrap();
    let rows = run_scaling_benchmark(&plan, &BenchOptions::default()).unwrap();
    let med = medians(&plan, &rows);
    let at = |n: usize, p: f64| med.iter().find(|&&(mn, mp, _)| mn == n && mp == p).unwrap().2;
    let mut failures = Vec::new();
    for &p in &plan.probabilities {
        for w in plan.node_counts.windows(2) {
            if at(w[1], p) < at(w[0], p) {
                failures.push(format!("p={p}: n={} median {:.6}s < n={} median {:.6}s", w[1], at(w[1], p), w[0], at(w[0], p)));
            }
        }
    }
    for &n in &plan.node_counts {
        for w in plan.probabilities.windows(2) {
            if at(n, w[1]) < at(n, w[0]) {
                failures.push(format!("n={n}: p={} median {:.6}s < p={} median {:.6}s", w[1], at(n, w[1]), w[0], at(n, w[0])));
            }
        }
    }
    let table: Vec<String> = med.iter().map(|(n, p, s)| format!("({n},{p})={s:.4}s")).collect();
    check(5, "scaling trend", &failures, &format!("medians {}", table.join(" ")));
}

#[test]
fn c6_determinism() {
    let g = random_digraph(150, 0.04, 2024).unwrap();
    let graph = Arc::new(g);
    let params = ObserverParams::for_graph(&graph);
    let mut failures = Vec::new();
    let baseline = profile_all_parallel(&Crowd::shared(graph.clone(), params), None, 1).unwrap();
    for run in 0..2 {
        for workers in [1, 2, 8] {
            let table = profile_all_parallel(&Crowd::shared(graph.clone(), params), None, workers).unwrap();
            if table != baseline {
                failures.push(format!("run {run} with {workers} workers differs from the single-worker table"));
            }
        }
    }
    let sequential = Crowd::shared(graph.clone(), params).profile_all(None).unwrap();
    if sequential != baseline {
        failures.push("sequential profile differs from the pooled one".into());
    }
    let spec = PlotSpec::default();
    let first = render_sullivan_plot(&baseline, &spec, "G(150, 0.04)").unwrap();
    let second = render_sullivan_plot(&sequential, &spec, "G(150, 0.04)").unwrap();
    if first.as_bytes() != second.as_bytes() {
        failures.push("SVG output differs for identical tables".into());
    }
    check(6, "determinism", &failures, &format!("{} rows identical across workers 1, 2, 8 and two runs; SVG identical", baseline.len()));
}

fn named_edges(g: &TestimonialGraph) -> Vec<(String, String, u64)> {
    g.edges().map(|(u, v, w)| (g.name(u).to_owned(), g.name(v).to_owned(), w.to_bits())).collect()
}

#[test]
fn c7_pruning_fixpoint() {
    let mut failures = Vec::new();
    let configs = [
        PruneConfig::default(),
        PruneConfig { degree_threshold: 2, weight_threshold: None },
        PruneConfig { degree_threshold: 3, weight_threshold: Some(1.0) },
    ];
    for (seed, _, _, g) in sweep() {
        let original = named_edges(&g);
        for cfg in &configs {
            let once = iteratively_prune(&g, cfg);
            if iteratively_prune(&once, cfg) != once {
                failures.push(format!("seed={seed} {cfg:?}: not idempotent"));
            }
            if once.nodes().any(|n| g.node_index(n).is_none()) {
                failures.push(format!("seed={seed} {cfg:?}: output has a foreign node"));
            }
            if named_edges(&once).iter().any(|e| !original.contains(e)) {
                failures.push(format!("seed={seed} {cfg:?}: output has a foreign or reweighted edge"));
            }
        }
    }
    let chain: Vec<(String, String)> = (0..10).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    let chain: Vec<(&str, &str)> = chain.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let pruned = iteratively_prune(&TestimonialGraph::from_edges(true, &chain), &PruneConfig::default());
    if pruned.node_count() != 0 {
        failures.push(format!("chain kept {} nodes", pruned.node_count()));
    }
    let cycle = TestimonialGraph::from_edges(true, &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
    if iteratively_prune(&cycle, &PruneConfig::default()) != cycle {
        failures.push("cycle changed".into());
    }
    check(7, "pruning fixpoint", &failures, &format!("{} sweep prunes idempotent and subgraphs; chain empty; cycle unchanged", SWEEP_GRAPHS as usize * configs.len()));
}

#[test]
fn c8_capacity_smoke() {
    let _guard = TIMING.lock().unwrap_or_else(|e| e.into_inner());
    let g = random_digraph(2000, 0.005, 7).unwrap();
    let (nodes, edges) = (g.node_count(), g.edge_count());
    let crowd = Crowd::new(g.clone(), ObserverParams::new(5, 5, Direction::Predecessors).unwrap());
    let started = Instant::now();
    let table = profile_all_parallel(&crowd, None, worker_count()).unwrap();
    let elapsed = started.elapsed();
    let mut failures = Vec::new();
    if table.len() != nodes {
        failures.push(format!("{} rows for {nodes} nodes", table.len()));
    }
    if elapsed > CAPACITY_TIME_LIMIT {
        failures.push(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), CAPACITY_TIME_LIMIT.as_secs()));
    }
    check(8, "capacity smoke test", &failures, &format!("G(2000, 0.005) with {edges} edges profiled in {:.1}s", elapsed.as_secs_f64()));
}
