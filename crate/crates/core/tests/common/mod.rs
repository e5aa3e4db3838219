//! Independent brute-force oracle over vertex bitmasks. Shares no code with
//! the library beyond the `Hypergraph` accessors.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hypersparse::auxgraph::AuxSnapshot;
use hypersparse::gen::{random_instance, RandomParams};
use hypersparse::hypergraph::Contraction;
use hypersparse::{Hypergraph, ProjectionMap, TerminalPartition, TerminalSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_N: usize = 16;

pub struct Oracle {
    pub n: usize,
    pub masks: Vec<u32>,
}

impl Oracle {
    pub fn new(g: &Hypergraph) -> Self {
        assert!(g.num_vertices() <= MAX_N, "oracle graph too large");
        let masks = g.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
        Self {
            n: g.num_vertices(),
            masks,
        }
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn cut_edges(&self, x: u32) -> Vec<usize> {
        let full = self.full();
        (0..self.masks.len())
            .filter(|&i| self.masks[i] & x != 0 && self.masks[i] & !x & full != 0)
            .collect()
    }

    pub fn cut(&self, x: u32) -> usize {
        let full = self.full();
        self.masks.iter().filter(|&&m| m & x != 0 && m & !x & full != 0).count()
    }

    /// Whether `x` is connected under the hyperedges restricted to it. The
    /// empty set counts as disconnected.
    pub fn connected(&self, x: u32) -> bool {
        if x == 0 {
            return false;
        }
        let mut seen = x & x.wrapping_neg();
        loop {
            let mut grown = seen;
            for &m in &self.masks {
                if m & seen != 0 {
                    grown |= m & x;
                }
            }
            if grown == seen {
                return seen == x;
            }
            seen = grown;
        }
    }

    /// Minimum `(A,B)` cut value and every minimizing source side.
    pub fn mincuts(&self, a: u32, b: u32) -> (usize, Vec<u32>) {
        let free: Vec<usize> = (0..self.n).filter(|&v| (a | b) >> v & 1 == 0).collect();
        let mut best = usize::MAX;
        let mut sides = Vec::new();
        for bits in 0..(1u32 << free.len()) {
            let mut x = a;
            for (i, &v) in free.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    x |= 1 << v;
                }
            }
            let val = self.cut(x);
            if val < best {
                best = val;
                sides.clear();
            }
            if val == best {
                sides.push(x);
            }
        }
        (best, sides)
    }

    pub fn thresholded(&self, a: u32, b: u32, c: usize) -> usize {
        self.mincuts(a, b).0.min(c)
    }

    /// Terminal bipartitions (as the side holding the smallest terminal)
    /// with mincut at most `c`.
    pub fn small_partitions(&self, t: &[usize], c: usize) -> Vec<(u32, u32, usize, Vec<u32>)> {
        let k = t.len();
        let mut out = Vec::new();
        for bits in (1u32..(1 << k)).step_by(2) {
            if bits == (1 << k) - 1 {
                continue;
            }
            let (a, b) = split(t, bits);
            let (val, sides) = self.mincuts(a, b);
            if val <= c {
                out.push((a, b, val, sides));
            }
        }
        out
    }

    pub fn essential(&self, t: &[usize], c: usize) -> BTreeSet<usize> {
        let mut ess = BTreeSet::new();
        for (_, _, _, sides) in self.small_partitions(t, c) {
            let mut common: Option<BTreeSet<usize>> = None;
            for x in sides {
                let here: BTreeSet<usize> = self.cut_edges(x).into_iter().collect();
                common = Some(match common {
                    None => here,
                    Some(c) => c.intersection(&here).copied().collect(),
                });
            }
            ess.extend(common.unwrap_or_default());
        }
        ess
    }

    /// Every mincut has both sides connected and the value is at most `c`.
    pub fn useful(&self, a: u32, b: u32, c: usize) -> bool {
        let (val, sides) = self.mincuts(a, b);
        val <= c && sides.iter().all(|&x| self.connected(x) && self.connected(!x & self.full()))
    }

    /// Sides `X` with value at most `c`, `|E(X)| <= |E(V∖X)|` and `G[X]`
    /// connected.
    pub fn connected_cuts(&self, c: usize) -> BTreeSet<Vec<usize>> {
        let full = self.full();
        let mut out = BTreeSet::new();
        for x in 1..full {
            if self.cut(x) > c {
                continue;
            }
            let inside = self.masks.iter().filter(|&&m| m & x != 0).count();
            let outside = self.masks.iter().filter(|&&m| m & !x & full != 0).count();
            if inside <= outside && self.connected(x) {
                out.insert(to_set(x));
            }
        }
        out
    }
}

pub fn bits(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn to_set(x: u32) -> Vec<usize> {
    (0..32).filter(|&v| x >> v & 1 == 1).collect()
}

pub fn split(t: &[usize], sel: u32) -> (u32, u32) {
    let mut a = 0;
    let mut b = 0;
    for (i, &v) in t.iter().enumerate() {
        if sel >> i & 1 == 1 {
            a |= 1 << v;
        } else {
            b |= 1 << v;
        }
    }
    (a, b)
}

/// Checks the sparsifier property over every pair of disjoint nonempty
/// terminal subsets. Returns the first violation.
pub fn check_sparsifier(
    g: &Hypergraph,
    t: &TerminalSet,
    h: &Hypergraph,
    pi: &ProjectionMap,
    c: usize,
) -> Result<(), String> {
    let og = Oracle::new(g);
    let oh = Oracle::new(h);
    let tv = t.to_vec();
    let k = tv.len() as u32;
    for code in 0..3usize.pow(k) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut x = code;
        for &v in &tv {
            match x % 3 {
                1 => a.push(v),
                2 => b.push(v),
                _ => {}
            }
            x /= 3;
        }
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let vg = og.thresholded(bits(&a), bits(&b), c);
        let ia = bits(&a.iter().map(|&v| pi.apply(v)).collect::<Vec<_>>());
        let ib = bits(&b.iter().map(|&v| pi.apply(v)).collect::<Vec<_>>());
        let vh = if ia & ib != 0 { c } else { oh.thresholded(ia, ib, c) };
        if vg != vh {
            return Err(format!("T1={a:?} T2={b:?}: G gives {vg}, H gives {vh}"));
        }
    }
    Ok(())
}

/// A random instance within oracle limits.
pub fn small_instance(seed: u64, connected: bool) -> (Hypergraph, TerminalSet, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(4..=10);
    let m = rng.gen_range(n - 1..=16);
    let p = RandomParams {
        n,
        m,
        max_rank: rng.gen_range(2..=4),
        terminals: rng.gen_range(2..=5),
        connected,
    };
    let c = rng.gen_range(1..=3);
    let (g, t) = random_instance(seed, p);
    (g, t, c)
}

/// Maps sets through a projection and returns the side holding vertex 0.
pub fn canonical_image(pi: &ProjectionMap, side: &[usize]) -> Vec<usize> {
    let img: BTreeSet<usize> = side.iter().map(|&v| pi.apply(v)).collect();
    if img.contains(&0) {
        img.into_iter().collect()
    } else {
        (0..pi.image_size()).filter(|v| !img.contains(v)).collect()
    }
}

pub fn count_by<T: Ord + Clone>(items: impl IntoIterator<Item = T>) -> BTreeMap<T, usize> {
    let mut out = BTreeMap::new();
    for i in items {
        *out.entry(i).or_insert(0) += 1;
    }
    out
}

/// Incremental snapshot of `aux` (on G) expressed in the ids of `G/e`.
pub fn relabel(snap: &AuxSnapshot, con: &Contraction) -> Result<AuxSnapshot, String> {
    let pi = &con.projection;
    let part = |side: &[usize]| -> Result<Vec<usize>, String> {
        let img: BTreeSet<usize> = side.iter().map(|&v| pi.apply(v)).collect();
        let img: Vec<usize> = img.into_iter().collect();
        TerminalPartition::new(&img, &con.terminals).map(|p| p.side_a).map_err(|e| e.to_string())
    };
    let mut out = AuxSnapshot {
        partitions: BTreeSet::new(),
        cuts: BTreeSet::new(),
        adj_pc: BTreeSet::new(),
        edge_nodes: snap.edge_nodes.clone(),
    };
    for (side, v) in &snap.partitions {
        out.partitions.insert((part(side)?, *v));
    }
    for (side, edges) in &snap.cuts {
        out.cuts.insert((canonical_image(pi, side), edges.clone()));
    }
    for (p, cut) in &snap.adj_pc {
        out.adj_pc.insert((part(p)?, canonical_image(pi, cut)));
    }
    Ok(out)
}

pub fn lift(snap: AuxSnapshot, edge_origin: &[usize]) -> AuxSnapshot {
    AuxSnapshot {
        cuts: snap
            .cuts
            .into_iter()
            .map(|(s, es)| {
                let mut es: Vec<_> = es.into_iter().map(|e| edge_origin[e]).collect();
                es.sort_unstable();
                (s, es)
            })
            .collect(),
        edge_nodes: snap.edge_nodes.into_iter().map(|e| edge_origin[e]).collect(),
        ..snap
    }
}


/// Random hypergraph with `3..=max_n` vertices, up to `max_m` edges of size
/// `2..=max_r`, two to five terminals and `c` in `1..=3`. With `connected`,
/// a random spanning tree of 2-edges is added first.
pub fn arb_instance(
    max_n: usize,
    max_m: usize,
    max_r: usize,
    connected: bool,
) -> impl Strategy<Value = (Hypergraph, TerminalSet, usize)> {
    (3..=max_n).prop_flat_map(move |n| {
        let all: Vec<usize> = (0..n).collect();
        (
            prop::collection::vec(prop::collection::vec(0..n, 2..=max_r), 1..=max_m),
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::sample::subsequence(all, 2..=n.min(5)),
            1..=3usize,
        )
            .prop_map(move |(mut edges, parents, t, c)| {
                if connected {
                    let tree: Vec<Vec<usize>> = (1..n).map(|v| vec![parents[v - 1].index(v), v]).collect();
                    edges.splice(0..0, tree);
                }
                (Hypergraph::new(n, edges).expect("ids in range"), TerminalSet::new(t), c)
            })
    })
}

/// Whether every edge is sorted, duplicate-free and has at least two
/// vertices in range.
pub fn normalized(g: &Hypergraph) -> bool {
    g.edges()
        .iter()
        .all(|e| e.len() >= 2 && e.windows(2).all(|w| w[0] < w[1]) && e[e.len() - 1] < g.num_vertices())
}
