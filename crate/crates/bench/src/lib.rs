//! Shared fixtures for the benchmarks.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use upp2_core::canon::Digraph;
use upp2_core::embed::{combine, prs_to_graph_pair};
use upp2_core::orderly::candidate_extensions;
use upp2_core::{BaseSet, Prs};

/// A mid-search 3×3 partial structure grown by seeded random extensions;
/// the kind of object the theta test canonicalizes.
pub fn partial_structure(rectangles: usize, seed: u64) -> Prs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Prs::empty(BaseSet::new(3, 3).expect("3x3 fits"));
    for _ in 0..rectangles {
        let cands = candidate_extensions(&x);
        if cands.is_empty() {
            break;
        }
        x = x.with_rectangle(&cands[rng.gen_range(0..cands.len())]).unwrap();
    }
    x
}

/// The 18-node combined graph of a partial structure.
pub fn combined_graph(rectangles: usize, seed: u64) -> Digraph {
    combine(&prs_to_graph_pair(&partial_structure(rectangles, seed))).graph().clone()
}

pub fn random_digraph(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(0.3) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
