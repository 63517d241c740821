//! Brute-force reference implementations used by the test suites.
//!
//! Nothing here shares code with the distance or clique engines: adjacency is
//! rebuilt from the raw edge list, distances come from unbounded BFS, and
//! every k-subset of sources is enumerated.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::graph::{Direction, NodeIndex, ObserverParams, TestimonialGraph};

/// Sources beyond this make enumeration impractical.
pub const MAX_SOURCES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("unknown node")]
    UnknownNode,
    #[error("{0} sources exceed the brute-force guard")]
    TooManySources(usize),
}

struct Plain {
    out: Vec<BTreeSet<NodeIndex>>,
    inn: Vec<BTreeSet<NodeIndex>>,
}

impl Plain {
    fn of(graph: &TestimonialGraph) -> Self {
        let n = graph.node_count();
        let mut out = alloc::vec![BTreeSet::new(); n];
        let mut inn = alloc::vec![BTreeSet::new(); n];
        for (u, v, _) in graph.edges() {
            if u == v {
                continue;
            }
            out[u].insert(v);
            inn[v].insert(u);
            if !graph.is_directed() {
                out[v].insert(u);
                inn[u].insert(v);
            }
        }
        Self { out, inn }
    }

    fn sources(&self, n: NodeIndex, direction: Direction) -> Vec<NodeIndex> {
        let set: BTreeSet<NodeIndex> = match direction {
            Direction::Predecessors => self.inn[n].clone(),
            Direction::Successors => self.out[n].clone(),
            Direction::Neighbors => self.inn[n].union(&self.out[n]).copied().collect(),
        };
        set.into_iter().collect()
    }

    /// Unbounded hop distances from `from` avoiding `excluded`.
    fn bfs(&self, excluded: NodeIndex, from: NodeIndex) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.out.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.out[u] {
                if w != excluded && dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

fn lookup(graph: &TestimonialGraph, n: &str) -> Result<NodeIndex, OracleError> {
    graph.nodes().position(|x| x == n).ok_or(OracleError::UnknownNode)
}

/// Calls `f` on every `k`-subset of `items` until it returns true.
fn any_subset(items: &[NodeIndex], k: usize, f: &mut dyn FnMut(&[NodeIndex]) -> bool) -> bool {
    fn go(
        items: &[NodeIndex],
        k: usize,
        start: usize,
        chosen: &mut Vec<NodeIndex>,
        f: &mut dyn FnMut(&[NodeIndex]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        for i in start..items.len() {
            chosen.push(items[i]);
            if go(items, k, i + 1, chosen, f) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::new(), f)
}

/// Whether some k-subset of `n`'s sources is pairwise at least `m` apart in
/// both directions in the graph without `n`.
pub fn brute_force_mk(
    graph: &TestimonialGraph,
    n: &str,
    m: usize,
    k: usize,
    direction: Direction,
) -> Result<bool, OracleError> {
    let plain = Plain::of(graph);
    let x = lookup(graph, n)?;
    let sources = plain.sources(x, direction);
    if sources.len() > MAX_SOURCES {
        return Err(OracleError::TooManySources(sources.len()));
    }
    if k > sources.len() {
        return Ok(false);
    }
    let rows: Vec<Vec<Option<usize>>> = sources.iter().map(|&u| plain.bfs(x, u)).collect();
    let row_of = |u: NodeIndex| sources.iter().position(|&s| s == u).unwrap();
    let far = |a: NodeIndex, b: NodeIndex| {
        let ab = rows[row_of(a)][b].unwrap_or(usize::MAX);
        let ba = rows[row_of(b)][a].unwrap_or(usize::MAX);
        ab.min(ba) >= m
    };
    Ok(any_subset(&sources, k, &mut |set| {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| far(a, b)))
    }))
}

/// Largest `m * k` over every in-bounds pair the node satisfies, or 0.
pub fn brute_force_s(graph: &TestimonialGraph, n: &str, params: &ObserverParams) -> Result<u32, OracleError> {
    let mut best = 0;
    for m in 1..=params.m_max {
        for k in 2..=params.k_max {
            if brute_force_mk(graph, n, m, k, params.direction)? {
                best = best.max(m * k);
            }
        }
    }
    Ok(best as u32)
}

/// Largest `h <= max_h` with an h,h-observer, or 0.
pub fn brute_force_h(
    graph: &TestimonialGraph,
    n: &str,
    max_h: usize,
    direction: Direction,
) -> Result<u32, OracleError> {
    let mut best = 0;
    for h in 1..=max_h {
        if brute_force_mk(graph, n, h, h, direction)? {
            best = h;
        }
    }
    Ok(best as u32)
}
