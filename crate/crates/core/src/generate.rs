//! Seeded G(n, p) random digraphs.
//!
//! The sampler is fixed so that graphs are reproducible across platforms and
//! implementations:
//!
//! * PRNG: ChaCha8, seeded with `ChaCha8Rng::seed_from_u64(seed)` (the
//!   `rand_core` 0.9 PCG32 seed expansion);
//! * node `i` is named by its decimal index, `"0"` to `"n-1"`;
//! * ordered pairs `(u, v)`, `u != v`, are visited with `u` outer and `v`
//!   inner, both ascending; each consumes one `next_u64()` draw `x`, and the
//!   edge exists iff `(x >> 11) as f64 * 2^-53 < p`.

use alloc::format;
use alloc::string::ToString;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, TestimonialGraph};

pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<TestimonialGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability must lie in [0, 1], got {p}")));
    }
    if n < 1 {
        return Err(Error::invalid("node count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: alloc::vec::Vec<_> = (0..n).map(|i| i.to_string()).collect();
    let mut b = GraphBuilder::new(true);
    for name in &names {
        b.add_node(name);
    }
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if x < p {
                b.add_edge(&names[u], &names[v], 1.0)?;
            }
        }
    }
    Ok(b.build())
}
