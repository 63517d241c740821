//! Hop distances in the graph with one node removed, truncated at a depth
//! limit, and the pairwise source separation built on top of them.
//!
//! Edge weights never enter here; distances are hop counts along edge
//! direction (both orientations on undirected graphs).

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{NodeIndex, TestimonialGraph};

/// Outcome of a truncated shortest-path query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// The exact hop count, strictly below the limit.
    Exact(usize),
    /// The target is at least `limit` hops away or unreachable.
    AtLeastLimit,
}

/// `min(d(u, v), d(v, u))` saturated at a cap. The cap stands for "at least
/// the cap, possibly disconnected".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separation(pub usize);

impl Separation {
    pub fn value(self) -> usize {
        self.0
    }
}

/// Shortest directed hop count from `from` to `to` avoiding `excluded`.
pub fn truncated_distance(
    graph: &TestimonialGraph,
    excluded: &str,
    from: &str,
    to: &str,
    limit: usize,
) -> Result<Distance> {
    let x = graph.require(excluded)?;
    let a = graph.require(from)?;
    let b = graph.require(to)?;
    if limit < 1 {
        return Err(Error::invalid("distance limit must be at least 1"));
    }
    if a == x || b == x {
        return Err(Error::invalid(format!("query endpoint equals the excluded node {excluded}")));
    }
    Ok(distance_between(graph, x, a, b, limit))
}

/// Separation between `u` and `v` in the graph without `excluded`.
pub fn separation(
    graph: &TestimonialGraph,
    excluded: &str,
    u: &str,
    v: &str,
    cap: usize,
) -> Result<Separation> {
    let x = graph.require(excluded)?;
    let a = graph.require(u)?;
    let b = graph.require(v)?;
    if cap < 1 {
        return Err(Error::invalid("separation cap must be at least 1"));
    }
    if a == x || b == x {
        return Err(Error::invalid(format!("query endpoint equals the excluded node {excluded}")));
    }
    if a == b {
        return Ok(Separation(0));
    }
    let one_way = |s, t| match distance_between(graph, x, s, t, cap) {
        Distance::Exact(d) => d,
        Distance::AtLeastLimit => cap,
    };
    Ok(Separation(one_way(a, b).min(one_way(b, a))))
}

fn distance_between(
    graph: &TestimonialGraph,
    excluded: NodeIndex,
    from: NodeIndex,
    to: NodeIndex,
    limit: usize,
) -> Distance {
    if from == to {
        return Distance::Exact(0);
    }
    let mut dist = alloc::vec![usize::MAX; graph.node_count()];
    let mut queue = VecDeque::new();
    dist[from] = 0;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        if next >= limit {
            break;
        }
        for &w in graph.successors(u) {
            if w == excluded || dist[w] != usize::MAX {
                continue;
            }
            if w == to {
                return Distance::Exact(next);
            }
            dist[w] = next;
            queue.push_back(w);
        }
    }
    Distance::AtLeastLimit
}

/// Reusable BFS buffers; generation stamps avoid clearing between runs.
#[derive(Debug, Clone, Default)]
struct BfsScratch {
    stamp: Vec<u32>,
    generation: u32,
    frontier: Vec<NodeIndex>,
    next: Vec<NodeIndex>,
}

impl BfsScratch {
    fn reset(&mut self, n: usize) {
        if self.stamp.len() != n || self.generation == u32::MAX {
            self.stamp.clear();
            self.stamp.resize(n, 0);
            self.generation = 0;
        }
        self.generation += 1;
    }

    /// All nodes within `depth` hops of `origin` avoiding `excluded`, with
    /// their distance. The origin itself is not listed.
    fn reach(
        &mut self,
        graph: &TestimonialGraph,
        excluded: NodeIndex,
        origin: NodeIndex,
        depth: usize,
    ) -> Vec<(u32, u8)> {
        self.reset(graph.node_count());
        let g = self.generation;
        self.stamp[origin] = g;
        self.stamp[excluded] = g;
        self.frontier.clear();
        self.frontier.push(origin);
        let mut out = Vec::new();
        for d in 1..=depth {
            self.next.clear();
            for &u in &self.frontier {
                for &w in graph.successors(u) {
                    if self.stamp[w] != g {
                        self.stamp[w] = g;
                        self.next.push(w);
                        out.push((w as u32, d as u8));
                    }
                }
            }
            if self.next.is_empty() {
                break;
            }
            core::mem::swap(&mut self.frontier, &mut self.next);
        }
        out
    }
}

/// Memoized truncated BFS results keyed by `(excluded, origin)`.
///
/// Every entry lists the nodes within `depth` hops of `origin` in the graph
/// without `excluded`, following edge direction. Entries are evicted oldest
/// first once `capacity` is reached; a capacity of zero disables caching.
#[derive(Debug, Clone)]
pub struct DistanceCache {
    depth: usize,
    capacity: usize,
    entries: BTreeMap<(NodeIndex, NodeIndex), Vec<(u32, u8)>>,
    order: VecDeque<(NodeIndex, NodeIndex)>,
    scratch: BfsScratch,
    hits: u64,
    misses: u64,
}

impl DistanceCache {
    pub const DEFAULT_CAPACITY: usize = 4096;

    /// `depth` is the deepest hop count that must be resolved exactly; it is
    /// `m_max - 1` for a crowd with bound `m_max`.
    pub fn new(depth: usize, capacity: usize) -> Self {
        assert!(depth < u8::MAX as usize, "depth {depth} exceeds supported range");
        Self {
            depth,
            capacity,
            entries: BTreeMap::new(),
            order: VecDeque::new(),
            scratch: BfsScratch::default(),
            hits: 0,
            misses: 0,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(hits, misses)` since creation.
    pub fn stats(&self) -> (u64, u64) {
        (self.hits, self.misses)
    }

    pub fn clear(&mut self) {
        self.entries.clear();
        self.order.clear();
    }

    /// Calls `visit(node, hops)` for every node within the cache depth of
    /// `origin` in the graph without `excluded`.
    pub(crate) fn for_each_reached<F>(
        &mut self,
        graph: &TestimonialGraph,
        excluded: NodeIndex,
        origin: NodeIndex,
        mut visit: F,
    ) where
        F: FnMut(NodeIndex, usize),
    {
        let key = (excluded, origin);
        if let Some(list) = self.entries.get(&key) {
            self.hits += 1;
            list.iter().for_each(|&(w, d)| visit(w as usize, d as usize));
            return;
        }
        self.misses += 1;
        let list = self.scratch.reach(graph, excluded, origin, self.depth);
        list.iter().for_each(|&(w, d)| visit(w as usize, d as usize));
        if self.capacity == 0 {
            return;
        }
        while self.entries.len() >= self.capacity {
            match self.order.pop_front() {
                Some(old) => {
                    self.entries.remove(&old);
                }
                None => break,
            }
        }
        self.order.push_back(key);
        self.entries.insert(key, list);
    }
}

/// Pairwise separations among the sources of one node, saturated at `cap`.
#[derive(Debug, Clone)]
pub(crate) struct SeparationMatrix {
    len: usize,
    cells: Vec<u8>,
}

impl SeparationMatrix {
    /// Builds the matrix for `sources` of `excluded`. Requires
    /// `cache.depth() >= cap - 1`.
    pub(crate) fn build(
        graph: &TestimonialGraph,
        cache: &mut DistanceCache,
        excluded: NodeIndex,
        sources: &[NodeIndex],
        cap: usize,
    ) -> Self {
        debug_assert!(cache.depth() + 1 >= cap);
        let s = sources.len();
        let cap8 = cap as u8;
        let mut one_way = alloc::vec![cap8; s * s];
        let mut position = BTreeMap::new();
        for (j, &v) in sources.iter().enumerate() {
            position.insert(v, j);
        }
        // Dense lookup only pays off once the source list is large.
        let dense: Option<Vec<u32>> = (s > 32).then(|| {
            let mut p = alloc::vec![u32::MAX; graph.node_count()];
            for (j, &v) in sources.iter().enumerate() {
                p[v] = j as u32;
            }
            p
        });
        for (i, &u) in sources.iter().enumerate() {
            let row = &mut one_way[i * s..(i + 1) * s];
            cache.for_each_reached(graph, excluded, u, |w, d| {
                if d >= cap {
                    return;
                }
                let j = match &dense {
                    Some(p) => match p[w] {
                        u32::MAX => return,
                        j => j as usize,
                    },
                    None => match position.get(&w) {
                        Some(&j) => j,
                        None => return,
                    },
                };
                row[j] = d as u8;
            });
        }
        let mut cells = alloc::vec![0u8; s * s];
        for i in 0..s {
            for j in 0..s {
                if i != j {
                    cells[i * s + j] = one_way[i * s + j].min(one_way[j * s + i]);
                }
            }
        }
        Self { len: s, cells }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.len + j] as usize
    }
}
