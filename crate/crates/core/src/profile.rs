use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Direction, ObserverParams};

/// Metrics for a single node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeProfile {
    pub node: String,
    /// Independence of sources, `S(n)`.
    pub s: u32,
    /// Diversity of sources, `D(n)`.
    pub d: u32,
    /// Epistemic position, `S(n) * D(n)`.
    pub pi: u64,
    pub h: u32,
}

impl NodeProfile {
    pub fn new(node: impl Into<String>, s: u32, d: u32, h: u32) -> Self {
        Self { node: node.into(), s, d, pi: s as u64 * d as u64, h }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableMeta {
    pub graph_name: String,
    pub m_max: usize,
    pub k_max: usize,
    pub direction: Option<Direction>,
    /// Free-form; left empty by the library so outputs stay reproducible.
    pub timestamp: String,
}

impl TableMeta {
    pub fn for_params(graph_name: impl Into<String>, params: &ObserverParams) -> Self {
        Self {
            graph_name: graph_name.into(),
            m_max: params.m_max,
            k_max: params.k_max,
            direction: Some(params.direction),
            timestamp: String::new(),
        }
    }
}

/// Profiles ordered by node id, ids unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProfileTable {
    rows: Vec<NodeProfile>,
    pub meta: TableMeta,
}

impl ProfileTable {
    /// Sorts `rows` by node id; duplicate ids are rejected.
    pub fn from_rows(mut rows: Vec<NodeProfile>, meta: TableMeta) -> Result<Self> {
        rows.sort_by(|a, b| a.node.cmp(&b.node));
        if let Some(w) = rows.windows(2).find(|w| w[0].node == w[1].node) {
            return Err(Error::invalid(format!("duplicate node id {} in profile table", w[0].node)));
        }
        Ok(Self { rows, meta })
    }

    pub fn rows(&self) -> &[NodeProfile] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, node: &str) -> Option<&NodeProfile> {
        self.rows
            .binary_search_by(|r| r.node.as_str().cmp(node))
            .ok()
            .map(|i| &self.rows[i])
    }

    pub fn max_d(&self) -> u32 {
        self.rows.iter().map(|r| r.d).max().unwrap_or(0)
    }
}
