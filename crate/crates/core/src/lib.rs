//! Source-independence, source-diversity and epistemic-position metrics for
//! testimonial networks.
//!
//! A testimonial network is a graph whose edges carry information from one
//! agent to another. For every node `n` this crate decides whether `n` is an
//! *m,k-observer* (it hears from at least `k` sources that sit pairwise at
//! least `m` hops apart once `n` itself is removed), and derives from that:
//!
//! * `S(n)`: the largest product `m * k` over the observer pairs `n` satisfies,
//! * `D(n)`: the number of distinct attribute tokens carried by `n`'s sources,
//! * `pi(n) = S(n) * D(n)`,
//! * the h-measure: the largest `h` such that `n` is an h,h-observer.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! profiling, plotting and the command-line front end live in the `epinet`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod clique;
pub mod distance;
mod error;
pub mod generate;
pub mod graph;
pub mod observer;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod profile;
pub mod prune;

pub use distance::{separation, truncated_distance, Distance, DistanceCache, Separation};
pub use error::{Error, Result};
pub use generate::random_digraph;
pub use graph::{Direction, GraphBuilder, NodeIndex, ObserverParams, TestimonialGraph};
pub use observer::Crowd;
pub use profile::{NodeProfile, ProfileTable, TableMeta};
pub use prune::{iteratively_prune, PruneConfig};

/// Every value `S(n)` can take under the default bounds `m <= 5`, `k <= 5`.
pub const DEFAULT_S_LATTICE: [u32; 14] = [0, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 20, 25];
