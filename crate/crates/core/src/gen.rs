//! Seeded instance generators for tests, benchmarks and the CLI.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Hypergraph, TerminalSet, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random instance. Edge sizes are uniform in `2..=max_rank`.
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub max_rank: usize,
    pub terminals: usize,
    /// Start from a random spanning hypertree so the result is connected
    /// whenever `m` is large enough to hold it.
    pub connected: bool,
}

fn random_edge(rng: &mut ChaCha8Rng, n: usize, max_rank: usize) -> Vec<VertexId> {
    let k = rng.gen_range(2..=max_rank.min(n).max(2));
    let mut e = sample(rng, n, k).into_vec();
    e.sort_unstable();
    e
}

fn terminals(rng: &mut ChaCha8Rng, n: usize, k: usize) -> TerminalSet {
    TerminalSet::new(sample(rng, n, k.min(n)))
}

/// Every vertex after the first joins an edge with already-placed vertices;
/// consecutive vertices share an edge when room allows.
fn spanning_hypertree(rng: &mut ChaCha8Rng, n: usize, max_rank: usize) -> Vec<Vec<VertexId>> {
    let mut edges = Vec::new();
    let mut v = 1;
    while v < n {
        let fresh = rng.gen_range(1..max_rank.max(2)).min(n - v);
        let old = rng.gen_range(0..v);
        let mut e: Vec<_> = (v..v + fresh).collect();
        e.push(old);
        let extra = max_rank.saturating_sub(e.len());
        for _ in 0..extra {
            if rng.gen_bool(0.5) {
                let w = rng.gen_range(0..v);
                if !e.contains(&w) {
                    e.push(w);
                }
            }
        }
        e.sort_unstable();
        edges.push(e);
        v += fresh;
    }
    edges
}

pub fn random_instance(seed: u64, p: RandomParams) -> (Hypergraph, TerminalSet) {
    assert!(p.n >= 2 && p.max_rank >= 2);
    let mut rng = rng(seed);
    let mut edges = if p.connected {
        spanning_hypertree(&mut rng, p.n, p.max_rank)
    } else {
        Vec::new()
    };
    edges.truncate(p.m.max(if p.connected { p.n - 1 } else { 0 }));
    while edges.len() < p.m {
        edges.push(random_edge(&mut rng, p.n, p.max_rank));
    }
    let t = terminals(&mut rng, p.n, p.terminals);
    let g = Hypergraph::new(p.n, edges).expect("generated ids are in range");
    (g, t)
}

/// Four terminals at the ends of tails of doubled 2-edges, each of length
/// `tail_len`, hanging off a 3-uniform circulant core of `n - 4·tail_len`
/// vertices with edges `{j, j+1, j+2}` and `{j, j+3, j+6}`. Every terminal
/// cut has value 2 and the core is far better connected, so the answer does
/// not depend on the core size.
pub fn tails_family(n: usize, tail_len: usize) -> (Hypergraph, TerminalSet) {
    let tails = 4;
    let core = n - tails * tail_len;
    assert!(core >= 7, "core needs at least 7 vertices");
    let mut edges = Vec::new();
    for j in 0..core {
        edges.push(vec![j, (j + 1) % core, (j + 2) % core]);
        edges.push(vec![j, (j + 3) % core, (j + 6) % core]);
    }
    let mut term = Vec::new();
    for i in 0..tails {
        let mut prev = i * core / tails;
        for step in 0..tail_len {
            let v = core + i * tail_len + step;
            edges.push(vec![prev, v]);
            edges.push(vec![prev, v]);
            prev = v;
        }
        term.push(prev);
    }
    (Hypergraph::new(n, edges).expect("ids in range"), TerminalSet::new(term))
}

/// A random 3-uniform instance: a spanning hypertree padded with uniform
/// random triples up to `m` edges, with `k` random terminals.
pub fn large_uniform(seed: u64, n: usize, m: usize, k: usize) -> (Hypergraph, TerminalSet) {
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(m);
    let mut v = 1;
    while v < n && edges.len() < m {
        let mut e = vec![rng.gen_range(0..v), v];
        if v + 1 < n {
            e.push(v + 1);
        } else {
            let mut w = rng.gen_range(0..v);
            while w == e[0] {
                w = rng.gen_range(0..v);
            }
            e.push(w);
        }
        e.sort_unstable();
        edges.push(e);
        v += 2;
    }
    while edges.len() < m {
        let mut e = sample(&mut rng, n, 3).into_vec();
        e.sort_unstable();
        edges.push(e);
    }
    let t = terminals(&mut rng, n, k);
    (Hypergraph::new(n, edges).expect("ids in range"), t)
}

/// Dense clusters of three vertices, chained by `c` parallel bridges, with
/// pendant degree-one terminals dealt round-robin over the clusters. At
/// least `5c` terminals and at most 18 vertices.
pub fn pendant_clusters(seed: u64, c: usize) -> (Hypergraph, TerminalSet) {
    assert!((1..=2).contains(&c));
    let mut rng = rng(seed);
    let (clusters, size, pendants) = if c == 1 {
        let q = rng.gen_range(2..=3);
        (q, 3, rng.gen_range(5..=18 - 3 * q))
    } else {
        (2, 3, 10)
    };
    let mut edges = Vec::new();
    for q in 0..clusters {
        let base = q * size;
        for i in 0..size {
            for j in i + 1..size {
                for _ in 0..=c {
                    edges.push(vec![base + i, base + j]);
                }
            }
        }
        if rng.gen_bool(0.5) {
            edges.push((base..base + size).collect());
        }
        if q + 1 < clusters {
            for _ in 0..c {
                let a = base + rng.gen_range(0..size);
                let b = base + size + rng.gen_range(0..size);
                edges.push(vec![a, b]);
            }
        }
    }
    let core = clusters * size;
    let mut term = Vec::new();
    for p in 0..pendants {
        let v = core + p;
        let cluster = p % clusters;
        edges.push(vec![cluster * size + rng.gen_range(0..size), v]);
        term.push(v);
    }
    (Hypergraph::new(core + pendants, edges).expect("ids in range"), TerminalSet::new(term))
}

/// A path on `n` vertices with terminals at both ends.
pub fn path_fixture(n: usize) -> (Hypergraph, TerminalSet) {
    let g = Hypergraph::new(n, (0..n - 1).map(|i| vec![i, i + 1]).collect()).expect("ids in range");
    (g, TerminalSet::new([0, n - 1]))
}

/// Edge ids of the four labelled edges in [`pruning_example`].
pub const PRUNING_A: usize = 0;
pub const PRUNING_B: usize = 1;
pub const PRUNING_D: usize = 5;
pub const PRUNING_E: usize = 6;

/// Seven vertices, three terminals: terminals 0 and 1 hang on vertex 2 by
/// edges a and b, vertex 2 meets vertex 3 by three parallel edges, and d, e
/// lead from 3 into a doubled triangle around terminal 6.
pub fn pruning_example() -> (Hypergraph, TerminalSet) {
    let g = Hypergraph::new(
        7,
        vec![
            vec![0, 2],
            vec![1, 2],
            vec![2, 3],
            vec![2, 3],
            vec![2, 3],
            vec![3, 4],
            vec![3, 5],
            vec![4, 5],
            vec![4, 6],
            vec![4, 6],
            vec![5, 6],
            vec![5, 6],
        ],
    )
    .expect("ids in range");
    (g, TerminalSet::new([0, 1, 6]))
}
