//! Scaling benchmark: wall-clock time to compute `S` for every node of seeded
//! random digraphs.
//!
//! Graph generation is never timed. Cell `(n, p, rep)` uses the graph
//! `random_digraph(n, p, seed + rep)`.

use std::io::Write;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use epinet_core::{random_digraph, Crowd, NodeIndex, ObserverParams};
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub node_counts: Vec<usize>,
    pub probabilities: Vec<f64>,
    pub seed: u64,
    pub repetitions: usize,
}

impl BenchPlan {
    pub fn new(node_counts: Vec<usize>, probabilities: Vec<f64>, seed: u64, repetitions: usize) -> Result<Self> {
        let plan = Self { node_counts, probabilities, seed, repetitions };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_counts.is_empty() || self.probabilities.is_empty() {
            return Err(Error::invalid("benchmark plan needs at least one node count and one probability"));
        }
        if let Some(n) = self.node_counts.iter().find(|&&n| n < 1) {
            return Err(Error::invalid(format!("node counts must be at least 1, got {n}")));
        }
        if let Some(p) = self.probabilities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::invalid(format!("edge probabilities must lie in [0, 1], got {p}")));
        }
        if self.repetitions < 1 {
            return Err(Error::invalid("repetitions must be at least 1"));
        }
        Ok(())
    }

    /// `(n, p, rep)` in output order: n outer, then p, then repetition.
    pub fn cells(&self) -> Vec<(usize, f64, usize)> {
        let mut cells = Vec::new();
        for &n in &self.node_counts {
            for &p in &self.probabilities {
                for rep in 0..self.repetitions {
                    cells.push((n, p, rep));
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    /// Threads used inside each cell.
    pub workers: usize,
    /// Cells that exceed this stop early and are marked timed out.
    pub cell_budget: Option<Duration>,
    /// Run cells concurrently instead of one after another.
    pub parallel_cells: bool,
    pub m_max: usize,
    pub k_max: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            cell_budget: None,
            parallel_cells: false,
            m_max: ObserverParams::DEFAULT_M_MAX,
            k_max: ObserverParams::DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub n: usize,
    pub p: f64,
    pub rep: usize,
    pub workers: usize,
    pub seconds: f64,
    pub timed_out: bool,
}

/// S for every node of `crowd`, in node-id order, with the time it took.
/// Stops early once `budget` is exceeded; the flag reports whether it did.
pub fn timed_s_values(crowd: &Crowd, workers: usize, budget: Option<Duration>) -> Result<(Vec<Option<u32>>, Duration, bool)> {
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    let nodes: Vec<NodeIndex> = crowd.graph().sorted_indices().collect();
    let expired = AtomicBool::new(false);
    let started = Instant::now();
    let one = |local: &mut Crowd, i: NodeIndex| {
        if expired.load(Ordering::Relaxed) {
            return None;
        }
        if budget.is_some_and(|b| started.elapsed() > b) {
            expired.store(true, Ordering::Relaxed);
            return None;
        }
        Some(local.s_value_at(i))
    };
    let values: Vec<Option<u32>> = if workers == 1 {
        let mut local = crowd.fork();
        nodes.iter().map(|&i| one(&mut local, i)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        pool.install(|| nodes.par_iter().map_init(|| crowd.fork(), |local, &i| one(local, i)).collect())
    };
    let elapsed = started.elapsed();
    let timed_out = values.iter().any(Option::is_none);
    Ok((values, elapsed, timed_out))
}

fn run_cell(plan: &BenchPlan, opts: &BenchOptions, (n, p, rep): (usize, f64, usize)) -> Result<TimingRow> {
    let graph = random_digraph(n, p, plan.seed.wrapping_add(rep as u64))?;
    let params = ObserverParams::new(opts.m_max, opts.k_max, epinet_core::Direction::Predecessors)?;
    let crowd = Crowd::new(graph, params);
    let (_, elapsed, timed_out) = timed_s_values(&crowd, opts.workers, opts.cell_budget)?;
    log::info!("n={n} p={p} rep={rep}: {:.4}s{}", elapsed.as_secs_f64(), if timed_out { " (timed out)" } else { "" });
    Ok(TimingRow { n, p, rep, workers: opts.workers, seconds: elapsed.as_secs_f64(), timed_out })
}

/// One row per `(n, p, rep)` in plan order.
pub fn run_scaling_benchmark(plan: &BenchPlan, opts: &BenchOptions) -> Result<Vec<TimingRow>> {
    plan.validate()?;
    let cells = plan.cells();
    if opts.parallel_cells {
        cells.into_par_iter().map(|c| run_cell(plan, opts, c)).collect()
    } else {
        cells.into_iter().map(|c| run_cell(plan, opts, c)).collect()
    }
}

/// `n,p,rep,workers,seconds`; timed-out cells carry `timeout` as seconds.
pub fn write_timings_csv(rows: &[TimingRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "n,p,rep,workers,seconds")?;
    for r in rows {
        if r.timed_out {
            writeln!(out, "{},{},{},{},timeout", r.n, r.p, r.rep, r.workers)?;
        } else {
            writeln!(out, "{},{},{},{},{:.6}", r.n, r.p, r.rep, r.workers, r.seconds)?;
        }
    }
    Ok(())
}

/// Median seconds per `(n, p)` over repetitions, in plan order.
pub fn medians(plan: &BenchPlan, rows: &[TimingRow]) -> Vec<(usize, f64, f64)> {
    let mut out = Vec::new();
    for &n in &plan.node_counts {
        for &p in &plan.probabilities {
            let mut secs: Vec<f64> = rows.iter().filter(|r| r.n == n && r.p == p).map(|r| r.seconds).collect();
            if secs.is_empty() {
                continue;
            }
            secs.sort_by(f64::total_cmp);
            let mid = secs.len() / 2;
            let median = if secs.len() % 2 == 1 { secs[mid] } else { (secs[mid - 1] + secs[mid]) / 2.0 };
            out.push((n, p, median));
        }
    }
    out
}
