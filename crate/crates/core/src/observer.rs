//! m,k-observer decisions and the per-node metrics derived from them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::clique::FarGraph;
use crate::distance::{DistanceCache, SeparationMatrix};
use crate::error::{Error, Result};
use crate::graph::{NodeIndex, ObserverParams, TestimonialGraph};
use crate::profile::{NodeProfile, ProfileTable, TableMeta};

/// A graph paired with fixed observer bounds and a private distance cache.
///
/// Metric calls take `&mut self` only to update the cache. To profile from
/// several threads, [`fork`](Self::fork) one crowd per worker: forks share
/// the graph and start with an empty cache, and every result is independent
/// of cache state.
#[derive(Debug, Clone)]
pub struct Crowd {
    graph: Arc<TestimonialGraph>,
    params: ObserverParams,
    cache: DistanceCache,
}

/// Sources of one node together with their pairwise separations.
struct SourceView {
    sources: Vec<NodeIndex>,
    separations: SeparationMatrix,
}

impl SourceView {
    fn far_graph(&self, m: usize) -> FarGraph {
        FarGraph::from_separations(&self.separations, m)
    }

    /// Whether some `k` sources are pairwise separated by at least `m`.
    fn observes(&self, m: usize, k: usize) -> bool {
        let s = self.sources.len();
        if k > s {
            return false;
        }
        if m <= 1 || k <= 1 {
            return true;
        }
        self.far_graph(m).has_clique(k)
    }
}

impl Crowd {
    pub fn new(graph: TestimonialGraph, params: ObserverParams) -> Self {
        Self::shared(Arc::new(graph), params)
    }

    pub fn shared(graph: Arc<TestimonialGraph>, params: ObserverParams) -> Self {
        Self::with_cache_capacity(graph, params, DistanceCache::DEFAULT_CAPACITY)
    }

    pub fn with_cache_capacity(graph: Arc<TestimonialGraph>, params: ObserverParams, capacity: usize) -> Self {
        let cache = DistanceCache::new(params.m_max.saturating_sub(1), capacity);
        Self { graph, params, cache }
    }

    /// Same graph and bounds, fresh cache.
    pub fn fork(&self) -> Self {
        Self::with_cache_capacity(Arc::clone(&self.graph), self.params, self.cache.capacity())
    }

    pub fn graph(&self) -> &TestimonialGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<TestimonialGraph> {
        &self.graph
    }

    pub fn params(&self) -> &ObserverParams {
        &self.params
    }

    pub fn cache(&self) -> &DistanceCache {
        &self.cache
    }

    fn view(&mut self, n: NodeIndex, cap: usize) -> SourceView {
        let sources = self.graph.sources(n, self.params.direction);
        let separations = if cap <= self.params.m_max {
            SeparationMatrix::build(&self.graph, &mut self.cache, n, &sources, cap)
        } else {
            // Deeper than the cache resolves; use a throwaway one.
            let mut deep = DistanceCache::new(cap - 1, 0);
            SeparationMatrix::build(&self.graph, &mut deep, n, &sources, cap)
        };
        SourceView { sources, separations }
    }

    /// Whether `n` hears from at least `k` sources that are pairwise at least
    /// `m` hops apart in both directions once `n` is removed.
    pub fn is_mk_observer(&mut self, n: &str, m: usize, k: usize) -> Result<bool> {
        let i = self.graph.require(n)?;
        self.is_mk_observer_at(i, m, k)
    }

    pub fn is_mk_observer_at(&mut self, n: NodeIndex, m: usize, k: usize) -> Result<bool> {
        if m < 1 || k < 1 {
            return Err(Error::invalid(format!("observer bounds must be positive, got m={m}, k={k}")));
        }
        if m == 1 || k == 1 {
            return Ok(self.graph.sources(n, self.params.direction).len() >= k);
        }
        let cap = m.max(self.params.m_max);
        Ok(self.view(n, cap).observes(m, k))
    }

    /// `S(n)`: the largest `m * k` within bounds for which `n` is an
    /// m,k-observer (`k >= 2`), or 0.
    pub fn s_value(&mut self, n: &str) -> Result<u32> {
        let i = self.graph.require(n)?;
        Ok(self.s_value_at(i))
    }

    pub fn s_value_at(&mut self, n: NodeIndex) -> u32 {
        if self.graph.sources(n, self.params.direction).len() < 2 {
            return 0;
        }
        let view = self.view(n, self.params.m_max);
        best_product(&view, &self.params)
    }

    /// `D(n)`: distinct attribute tokens over all sources of `n`.
    pub fn d_value(&self, n: &str) -> Result<u32> {
        let i = self.graph.require(n)?;
        Ok(self.d_value_at(i))
    }

    pub fn d_value_at(&self, n: NodeIndex) -> u32 {
        let union: BTreeSet<&str> = self
            .graph
            .sources(n, self.params.direction)
            .into_iter()
            .flat_map(|j| self.graph.attributes(j).iter().map(|a| a.as_str()))
            .collect();
        union.len() as u32
    }

    pub fn pi_value(&mut self, n: &str) -> Result<u64> {
        let i = self.graph.require(n)?;
        Ok(self.s_value_at(i) as u64 * self.d_value_at(i) as u64)
    }

    /// The largest `h` in `1..=max_h` for which `n` is an h,h-observer, or 0.
    /// `max_h` defaults to `min(m_max, k_max)`.
    pub fn h_measure(&mut self, n: &str, max_h: Option<usize>) -> Result<u32> {
        let i = self.graph.require(n)?;
        let max_h = max_h.unwrap_or_else(|| self.params.h_max());
        if max_h < 1 {
            return Err(Error::invalid("max_h must be at least 1"));
        }
        let view = self.view(i, max_h.max(self.params.m_max));
        Ok(highest_h(&view, max_h))
    }

    pub fn profile(&mut self, n: &str) -> Result<NodeProfile> {
        let i = self.graph.require(n)?;
        Ok(self.profile_at(i))
    }

    /// All metrics for one node from a single separation matrix.
    pub fn profile_at(&mut self, n: NodeIndex) -> NodeProfile {
        let view = self.view(n, self.params.m_max);
        let s = if view.sources.len() < 2 { 0 } else { best_product(&view, &self.params) };
        let h = highest_h(&view, self.params.h_max());
        NodeProfile::new(self.graph.name(n).to_string(), s, self.d_value_at(n), h)
    }

    /// Indices for `subset` (all nodes when `None`), sorted by node id and
    /// deduplicated.
    pub fn resolve_subset(&self, subset: Option<&[&str]>) -> Result<Vec<NodeIndex>> {
        match subset {
            None => Ok(self.graph.sorted_indices().collect()),
            Some(names) => {
                let mut idx = names.iter().map(|n| self.graph.require(n)).collect::<Result<Vec<_>>>()?;
                idx.sort_by(|&a, &b| self.graph.name(a).cmp(self.graph.name(b)));
                idx.dedup();
                Ok(idx)
            }
        }
    }

    /// Profiles of `subset` (all nodes when `None`) ordered by node id.
    pub fn profile_all(&mut self, subset: Option<&[&str]>) -> Result<ProfileTable> {
        let nodes = self.resolve_subset(subset)?;
        let rows = nodes.into_iter().map(|i| self.profile_at(i)).collect();
        ProfileTable::from_rows(rows, TableMeta::for_params("", &self.params))
    }
}

/// Scans m and k downwards, skipping pairs that cannot beat the best product.
/// Monotonicity makes the first hit for each m its largest k.
fn best_product(view: &SourceView, params: &ObserverParams) -> u32 {
    let s = view.sources.len();
    let mut best = 0;
    for m in (1..=params.m_max).rev() {
        if m * params.k_max <= best {
            break;
        }
        let top_k = params.k_max.min(s);
        if top_k < 2 || m * top_k <= best {
            continue;
        }
        if m == 1 {
            best = best.max(top_k);
            continue;
        }
        let far = view.far_graph(m);
        for k in (2..=top_k).rev() {
            if m * k <= best {
                break;
            }
            if far.has_clique(k) {
                best = m * k;
                break;
            }
        }
    }
    best as u32
}

fn highest_h(view: &SourceView, max_h: usize) -> u32 {
    (1..=max_h).rev().find(|&h| view.observes(h, h)).unwrap_or(0) as u32
}
