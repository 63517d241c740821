//! Exact k-clique detection on the "far graph" of a node's sources.
//!
//! A greedy pass may confirm a clique early; a negative answer always comes
//! from the exhaustive branch-and-bound search.

use alloc::vec::Vec;

use crate::distance::SeparationMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(len: usize) -> Self {
        Self { words: alloc::vec![0; len.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Sources joined whenever their separation reaches the threshold `m`.
#[derive(Debug, Clone)]
pub(crate) struct FarGraph {
    rows: Vec<BitSet>,
}

impl FarGraph {
    pub(crate) fn from_separations(sep: &SeparationMatrix, m: usize) -> Self {
        let s = sep.len();
        let mut rows = alloc::vec![BitSet::empty(s); s];
        for i in 0..s {
            for j in (i + 1)..s {
                if sep.get(i, j) >= m {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Self { rows }
    }

    #[cfg(test)]
    fn from_edges(len: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows = alloc::vec![BitSet::empty(len); len];
        for &(a, b) in edges {
            rows[a].insert(b);
            rows[b].insert(a);
        }
        Self { rows }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Whether some `k` vertices are pairwise adjacent.
    pub(crate) fn has_clique(&self, k: usize) -> bool {
        let n = self.len();
        if k <= 1 {
            return n >= k;
        }
        if k > n {
            return false;
        }
        let alive = self.core(k - 1);
        if alive.count() < k {
            return false;
        }
        if self.greedy(&alive, k) {
            return true;
        }
        self.extend(&alive, k)
    }

    /// Vertices surviving repeated removal of those with fewer than
    /// `min_degree` live neighbours.
    fn core(&self, min_degree: usize) -> BitSet {
        let n = self.len();
        let mut alive = BitSet::empty(n);
        (0..n).for_each(|i| alive.insert(i));
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if alive.contains(v) && self.rows[v].intersection(&alive).count() < min_degree {
                    alive.remove(v);
                    changed = true;
                }
            }
        }
        alive
    }

    /// Greedy clique growth from the few highest-degree seeds.
    fn greedy(&self, alive: &BitSet, k: usize) -> bool {
        let mut order: Vec<(usize, usize)> =
            alive.iter().map(|v| (self.rows[v].intersection(alive).count(), v)).collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        for &(_, seed) in order.iter().take(4) {
            let mut candidates = self.rows[seed].intersection(alive);
            let mut size = 1;
            for &(_, v) in &order {
                if candidates.contains(v) {
                    size += 1;
                    if size >= k {
                        return true;
                    }
                    candidates = candidates.intersection(&self.rows[v]);
                }
            }
        }
        false
    }

    /// Exhaustive search for `need` more vertices inside `candidates`.
    fn extend(&self, candidates: &BitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.count() < need {
            return false;
        }
        if need == 1 {
            return true;
        }
        if need == 2 {
            return candidates.iter().any(|v| self.rows[v].intersects(candidates));
        }
        let mut remaining = candidates.clone();
        for v in candidates.iter() {
            if remaining.count() < need {
                return false;
            }
            remaining.remove(v);
            let next = remaining.intersection(&self.rows[v]);
            if self.extend(&next, need - 1) {
                return true;
            }
        }
        false
    }
}
