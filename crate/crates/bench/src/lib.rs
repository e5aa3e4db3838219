//! Shared fixtures for the criterion benches in `benches/`.

use hypersparse::gen::{large_uniform, random_instance, RandomParams};
use hypersparse::{Hypergraph, TerminalSet};

/// A connected random instance of rank at most 4 with `k` terminals.
pub fn random_connected(seed: u64, n: usize, m: usize, k: usize) -> (Hypergraph, TerminalSet) {
    random_instance(
        seed,
        RandomParams {
            n,
            m,
            max_rank: 4,
            terminals: k,
            connected: true,
        },
    )
}

/// 3-uniform instances with three edges per vertex, at each size.
pub fn uniform_ladder(sizes: &[usize], k: usize) -> Vec<(usize, Hypergraph, TerminalSet)> {
    sizes
        .iter()
        .map(|&n| {
            let (g, t) = large_uniform(n as u64, n, 3 * n, k);
            (n, g, t)
        })
        .collect()
}
