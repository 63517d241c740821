//! Iterative reduction of a graph to a stable core.

use alloc::vec::Vec;

use crate::graph::{NodeIndex, TestimonialGraph};

/// Thresholds for [`iteratively_prune`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PruneConfig {
    /// Nodes with in-degree + out-degree at or below this are removed.
    pub degree_threshold: usize,
    /// Edges with weight strictly below this are removed; `None` keeps all.
    pub weight_threshold: Option<f64>,
}

impl Default for PruneConfig {
    fn default() -> Self {
        Self { degree_threshold: 1, weight_threshold: None }
    }
}

/// Repeats, until nothing changes: drop light edges, drop low-degree nodes,
/// keep the largest weakly connected component. The result may be empty.
///
/// Degrees count distinct non-loop neighbours in each direction. Component
/// ties go to the component holding the smallest node id.
pub fn iteratively_prune(graph: &TestimonialGraph, config: &PruneConfig) -> TestimonialGraph {
    let mut current = graph.clone();
    loop {
        let before = (current.node_count(), current.edge_count());
        if let Some(min_weight) = config.weight_threshold {
            current = current.retain(|_| true, |_, _, w| w >= min_weight);
        }
        let keep: Vec<bool> = (0..current.node_count())
            .map(|i| current.degree(i) > config.degree_threshold)
            .collect();
        current = current.retain(|i| keep[i], |_, _, _| true);
        let component = largest_component(&current);
        current = current.retain(|i| component[i], |_, _, _| true);
        if (current.node_count(), current.edge_count()) == before {
            return current;
        }
    }
}

/// Membership mask of the largest weakly connected component.
fn largest_component(graph: &TestimonialGraph) -> Vec<bool> {
    let n = graph.node_count();
    let mut label = alloc::vec![usize::MAX; n];
    // (size, smallest id, label)
    let mut best: Option<(usize, &str, usize)> = None;
    let mut stack: Vec<NodeIndex> = Vec::new();
    let mut next_label = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = next_label;
        next_label += 1;
        label[start] = id;
        stack.push(start);
        let mut size = 0;
        let mut smallest = graph.name(start);
        while let Some(u) = stack.pop() {
            size += 1;
            smallest = smallest.min(graph.name(u));
            for &w in graph.successors(u).iter().chain(graph.predecessors(u)) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    stack.push(w);
                }
            }
        }
        let better = match best {
            None => true,
            Some((bs, bid, _)) => size > bs || (size == bs && smallest < bid),
        };
        if better {
            best = Some((size, smallest, id));
        }
    }
    match best {
        Some((_, _, id)) => label.iter().map(|&l| l == id).collect(),
        None => Vec::new(),
    }
}
