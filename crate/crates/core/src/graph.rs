//! Graph representation and the source-set convention.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense internal index of a node. Indices follow insertion order and are not
/// part of any external format.
pub type NodeIndex = usize;

/// Which neighbours of `n` count as its sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// In-neighbours: an edge `u -> n` means `n` receives from `u`.
    Predecessors,
    /// Out-neighbours.
    Successors,
    /// Both; the only meaningful choice on undirected graphs.
    Neighbors,
}

impl Direction {
    pub fn default_for(directed: bool) -> Self {
        if directed {
            Direction::Predecessors
        } else {
            Direction::Neighbors
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Predecessors => "predecessors",
            Direction::Successors => "successors",
            Direction::Neighbors => "neighbors",
        }
    }
}

/// Search bounds for the m,k-observer computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObserverParams {
    pub m_max: usize,
    pub k_max: usize,
    pub direction: Direction,
}

impl ObserverParams {
    pub const DEFAULT_M_MAX: usize = 5;
    pub const DEFAULT_K_MAX: usize = 5;

    pub fn new(m_max: usize, k_max: usize, direction: Direction) -> Result<Self> {
        if m_max < 1 {
            return Err(Error::invalid(format!("m_max must be at least 1, got {m_max}")));
        }
        if k_max < 2 {
            return Err(Error::invalid(format!("k_max must be at least 2, got {k_max}")));
        }
        Ok(Self { m_max, k_max, direction })
    }

    /// Default bounds (5, 5) with the graph's default direction.
    pub fn for_graph(graph: &TestimonialGraph) -> Self {
        Self {
            m_max: Self::DEFAULT_M_MAX,
            k_max: Self::DEFAULT_K_MAX,
            direction: Direction::default_for(graph.is_directed()),
        }
    }

    /// Default upper bound for the h-measure.
    pub fn h_max(&self) -> usize {
        self.m_max.min(self.k_max)
    }
}

/// A directed (or undirected) weighted graph with per-node attribute sets.
///
/// Self-loops are stored, counted by [`edge_count`](Self::edge_count) and
/// written back out, but never show up in the adjacency used by the metrics.
/// On undirected graphs an edge is stored once, keyed by its endpoints in
/// index order.
#[derive(Debug, Clone)]
pub struct TestimonialGraph {
    directed: bool,
    names: Vec<String>,
    index: BTreeMap<String, NodeIndex>,
    edges: BTreeMap<(NodeIndex, NodeIndex), f64>,
    attributes: Vec<BTreeSet<String>>,
    out_adj: Vec<Vec<NodeIndex>>,
    in_adj: Vec<Vec<NodeIndex>>,
}

/// Accumulates nodes and edges; parallel edges collapse by summing weights.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    directed: bool,
    names: Vec<String>,
    index: BTreeMap<String, NodeIndex>,
    edges: BTreeMap<(NodeIndex, NodeIndex), f64>,
    attributes: Vec<BTreeSet<String>>,
}

impl GraphBuilder {
    pub fn new(directed: bool) -> Self {
        Self {
            directed,
            names: Vec::new(),
            index: BTreeMap::new(),
            edges: BTreeMap::new(),
            attributes: Vec::new(),
        }
    }

    pub fn add_node(&mut self, name: &str) -> NodeIndex {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.attributes.push(BTreeSet::new());
        i
    }

    /// Adds `weight` to the edge `u -> v`, creating endpoints as needed.
    pub fn add_edge(&mut self, u: &str, v: &str, weight: f64) -> Result<&mut Self> {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::invalid(format!(
                "edge {u} -> {v}: weight must be finite and non-negative, got {weight}"
            )));
        }
        let a = self.add_node(u);
        let b = self.add_node(v);
        let key = if self.directed || a <= b { (a, b) } else { (b, a) };
        *self.edges.entry(key).or_insert(0.0) += weight;
        Ok(self)
    }

    pub fn set_attributes<I, S>(&mut self, name: &str, attrs: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let i = self.add_node(name);
        self.attributes[i] = attrs.into_iter().map(Into::into).collect();
        self
    }

    pub fn build(self) -> TestimonialGraph {
        TestimonialGraph::assemble(self.directed, self.names, self.index, self.edges, self.attributes)
    }
}

impl TestimonialGraph {
    fn assemble(
        directed: bool,
        names: Vec<String>,
        index: BTreeMap<String, NodeIndex>,
        edges: BTreeMap<(NodeIndex, NodeIndex), f64>,
        attributes: Vec<BTreeSet<String>>,
    ) -> Self {
        let n = names.len();
        let mut out_adj = alloc::vec![Vec::new(); n];
        let mut in_adj = alloc::vec![Vec::new(); n];
        for &(u, v) in edges.keys() {
            if u == v {
                continue;
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
            if !directed {
                out_adj[v].push(u);
                in_adj[u].push(v);
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Self { directed, names, index, edges, attributes, out_adj, in_adj }
    }

    /// Shorthand for tests and small fixtures: unit-weight edges by name.
    pub fn from_edges(directed: bool, edges: &[(&str, &str)]) -> Self {
        let mut b = GraphBuilder::new(directed);
        for &(u, v) in edges {
            b.add_edge(u, v, 1.0).expect("unit weight is valid");
        }
        b.build()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    /// Number of stored edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, name: &str) -> Option<NodeIndex> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<NodeIndex> {
        self.node_index(name).ok_or_else(|| Error::NodeNotFound(name.to_string()))
    }

    pub fn name(&self, i: NodeIndex) -> &str {
        &self.names[i]
    }

    /// Node names in index (insertion) order.
    pub fn nodes(&self) -> impl Iterator<Item = &str> + '_ {
        self.names.iter().map(String::as_str)
    }

    /// Node indices ordered by node id.
    pub fn sorted_indices(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        self.index.values().copied()
    }

    /// Stored edges as `(u, v, weight)` in index order, self-loops included.
    pub fn edges(&self) -> impl Iterator<Item = (NodeIndex, NodeIndex, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: NodeIndex, v: NodeIndex) -> Option<f64> {
        let key = if self.directed || u <= v { (u, v) } else { (v, u) };
        self.edges.get(&key).copied()
    }

    /// Out-neighbours of `i`, sorted, self excluded.
    pub fn successors(&self, i: NodeIndex) -> &[NodeIndex] {
        &self.out_adj[i]
    }

    /// In-neighbours of `i`, sorted, self excluded.
    pub fn predecessors(&self, i: NodeIndex) -> &[NodeIndex] {
        &self.in_adj[i]
    }

    pub fn attributes(&self, i: NodeIndex) -> &BTreeSet<String> {
        &self.attributes[i]
    }

    /// Replaces the attribute set of `name`.
    pub fn set_attributes<I, S>(&mut self, name: &str, attrs: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let i = self.require(name)?;
        self.attributes[i] = attrs.into_iter().map(Into::into).collect();
        Ok(())
    }

    /// Sources of node `i` as sorted indices; never contains `i`.
    pub fn sources(&self, i: NodeIndex, direction: Direction) -> Vec<NodeIndex> {
        match direction {
            Direction::Predecessors => self.in_adj[i].clone(),
            Direction::Successors => self.out_adj[i].clone(),
            Direction::Neighbors => {
                let mut all: Vec<NodeIndex> =
                    self.in_adj[i].iter().chain(&self.out_adj[i]).copied().collect();
                all.sort_unstable();
                all.dedup();
                all
            }
        }
    }

    /// Sources of `n` by name, sorted by node id.
    pub fn sources_of(&self, n: &str, direction: Direction) -> Result<Vec<&str>> {
        let i = self.require(n)?;
        let mut out: Vec<&str> = self.sources(i, direction).into_iter().map(|j| self.name(j)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// In-degree plus out-degree of `i` over non-loop edges. On undirected
    /// graphs this is the plain degree.
    pub fn degree(&self, i: NodeIndex) -> usize {
        if self.directed {
            self.in_adj[i].len() + self.out_adj[i].len()
        } else {
            self.out_adj[i].len()
        }
    }

    /// Subgraph on the nodes where `keep_node` holds, keeping the edges among
    /// them for which `keep_edge` holds. Node order and attributes carry over.
    pub fn retain<N, E>(&self, keep_node: N, keep_edge: E) -> TestimonialGraph
    where
        N: Fn(NodeIndex) -> bool,
        E: Fn(NodeIndex, NodeIndex, f64) -> bool,
    {
        let mut remap = alloc::vec![usize::MAX; self.node_count()];
        let mut names = Vec::new();
        let mut index = BTreeMap::new();
        let mut attributes = Vec::new();
        for (i, slot) in remap.iter_mut().enumerate() {
            if keep_node(i) {
                *slot = names.len();
                index.insert(self.names[i].clone(), names.len());
                names.push(self.names[i].clone());
                attributes.push(self.attributes[i].clone());
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v, w)| remap[u] != usize::MAX && remap[v] != usize::MAX && keep_edge(u, v, w))
            .map(|(u, v, w)| ((remap[u], remap[v]), w))
            .collect();
        TestimonialGraph::assemble(self.directed, names, index, edges, attributes)
    }

    /// Edges keyed by endpoint names, in a canonical orientation for
    /// undirected graphs.
    fn named_edges(&self) -> BTreeMap<(&str, &str), u64> {
        self.edges()
            .map(|(u, v, w)| {
                let (a, b) = (self.name(u), self.name(v));
                let key = if self.directed || a <= b { (a, b) } else { (b, a) };
                (key, w.to_bits())
            })
            .collect()
    }
}

/// Graphs compare by node ids, edges with weights, and attributes; the
/// internal index order is irrelevant.
impl PartialEq for TestimonialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed
            && self.index.len() == other.index.len()
            && self.index.iter().all(|(name, &i)| {
                other.node_index(name).is_some_and(|j| self.attributes[i] == other.attributes[j])
            })
            && self.named_edges() == other.named_edges()
    }
}
