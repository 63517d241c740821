//! Profiling across a worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use epinet_core::{Crowd, ProfileTable, TableMeta};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Profiles `subset` (all nodes when `None`) on `workers` threads.
///
/// Each worker forks its own crowd, so caches are never shared; rows come
/// back ordered by node id and are identical for every worker count.
pub fn profile_all_parallel(crowd: &Crowd, subset: Option<&[&str]>, workers: usize) -> Result<ProfileTable> {
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    let nodes = crowd.resolve_subset(subset)?;
    let total = nodes.len();
    let started = Instant::now();
    log::info!("profiling {total} nodes on {workers} worker(s)");
    let done = AtomicUsize::new(0);
    let step = (total / 10).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| {
        nodes
            .par_iter()
            .map_init(
                || crowd.fork(),
                |local, &i| {
                    let row = local.profile_at(i);
                    let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if n.is_multiple_of(step) {
                        log::info!("{n}/{total} nodes profiled ({:.1}s)", started.elapsed().as_secs_f64());
                    }
                    row
                },
            )
            .collect::<Vec<_>>()
    });
    log::info!("profiled {total} nodes in {:.2}s", started.elapsed().as_secs_f64());
    Ok(ProfileTable::from_rows(rows, TableMeta::for_params("", crowd.params()))?)
}
