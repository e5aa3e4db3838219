//! Enumeration of connected cuts of value at most `c`.
//!
//! The main engine is a seeded "guess and trim" search: a DFS from the seed
//! that gives up after `budget + 1` distinct hyperedges, followed by
//! recursion on copies of the graph where one vertex has been trimmed out of
//! one visited hyperedge. Trims are kept as an overlay instead of graph
//! copies. Two refinements keep the search exact and small:
//!
//! * A DFS that gets stuck on a set larger than the target must keep
//!   trimming, so stuck states branch too (after emitting their own cut).
//! * Only trims `(e, w)` where `w` was first discovered through `e` are
//!   tried. The first discovered vertex outside a target side is always
//!   such a pair, so no target is lost, and the branching factor drops
//!   from `sum |e|` to the number of discovered vertices.
//!
//! Trims on more than `c` distinct hyperedges can never all sit on the
//! boundary of a cut of value `c`, so those states are skipped. Trim sets are
//! memoized per seed.

use std::collections::{BTreeSet, HashSet};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::flow::Cut;
use crate::hypergraph::{crosses, EdgeId, Hypergraph, UnionFind, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationParams {
    pub c: usize,
    pub phi_inv: Ratio<u64>,
    pub r: usize,
    /// Largest number of hyperedges meeting the small side, `⌊c·φ⁻¹⌋`.
    pub budget: usize,
    /// Bound on the number of trims along one search path, `r·c`.
    pub max_depth: usize,
}

impl EnumerationParams {
    pub fn new(c: usize, phi_inv: Ratio<u64>, r: usize) -> Result<Self> {
        if phi_inv < Ratio::from_integer(1) {
            return invalid("phi must lie in (0, 1], so phi_inv must be at least 1");
        }
        let scaled = phi_inv * Ratio::from_integer(c as u64);
        let budget = usize::try_from(scaled.floor().to_integer())
            .unwrap_or(usize::MAX)
            .max(1);
        Ok(Self {
            c,
            phi_inv,
            r,
            budget,
            max_depth: r * c,
        })
    }

    /// Budget `m`: every connected cut is reachable whatever the expansion.
    pub fn safe(g: &Hypergraph, c: usize) -> Self {
        let m = g.num_edges().max(1);
        Self {
            c,
            phi_inv: Ratio::from_integer(m as u64),
            r: g.rank(),
            budget: m,
            max_depth: g.rank() * c,
        }
    }
}

/// Trim overlay: `(edge, removed vertex)` pairs, kept sorted.
pub type Trims = Vec<(EdgeId, VertexId)>;

/// Output of a search from one seed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedSearch {
    /// Emitted sides, sorted and deduplicated.
    pub sides: Vec<Vec<VertexId>>,
    /// Number of recursion nodes that ran a DFS.
    pub nodes: usize,
}

/// All connected cuts found, plus recursion-tree telemetry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub cuts: Vec<Cut>,
    pub total_nodes: usize,
    pub max_seed_nodes: usize,
}

struct Scratch {
    seen_v: Vec<u32>,
    seen_e: Vec<u32>,
    trimmed: Vec<u32>,
    side: Vec<bool>,
    stamp: u32,
}

impl Scratch {
    fn new(n: usize, m: usize) -> Self {
        Self {
            seen_v: vec![0; n],
            seen_e: vec![0; m],
            trimmed: vec![0; m],
            side: vec![false; n],
            stamp: 0,
        }
    }
}

enum Dfs {
    Stuck(Vec<(VertexId, EdgeId)>),
    Overflow(Vec<(VertexId, EdgeId)>),
}

fn run_dfs(
    g: &Hypergraph,
    inc: &[Vec<EdgeId>],
    budget: usize,
    seed: VertexId,
    trims: &[(EdgeId, VertexId)],
    s: &mut Scratch,
) -> Dfs {
    s.stamp += 1;
    let stamp = s.stamp;
    for &(e, _) in trims {
        s.trimmed[e] = stamp;
    }
    let removed = |s: &Scratch, e: EdgeId, v: VertexId| {
        s.trimmed[e] == stamp && trims.binary_search(&(e, v)).is_ok()
    };
    let mut discovery = Vec::new();
    let mut stack = vec![seed];
    s.seen_v[seed] = stamp;
    let mut visited = 0usize;
    while let Some(u) = stack.pop() {
        for &e in &inc[u] {
            if s.seen_e[e] == stamp || removed(s, e, u) {
                continue;
            }
            s.seen_e[e] = stamp;
            visited += 1;
            if visited > budget {
                return Dfs::Overflow(discovery);
            }
            for &w in g.edge(e) {
                if s.seen_v[w] != stamp && !removed(s, e, w) {
                    s.seen_v[w] = stamp;
                    discovery.push((w, e));
                    stack.push(w);
                }
            }
        }
    }
    Dfs::Stuck(discovery)
}

fn search_seed(
    g: &Hypergraph,
    inc: &[Vec<EdgeId>],
    params: &EnumerationParams,
    seed: VertexId,
    depth: usize,
    start: Trims,
    s: &mut Scratch,
) -> SeedSearch {
    let mut out = SeedSearch::default();
    if params.c == 0 || depth > params.max_depth {
        return out;
    }
    let n = g.num_vertices();
    let mut emitted: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut memo: HashSet<Trims> = HashSet::new();
    let mut stack = vec![(depth, start.clone())];
    memo.insert(start);
    while let Some((d, trims)) = stack.pop() {
        out.nodes += 1;
        let discovery = match run_dfs(g, inc, params.budget, seed, &trims, s) {
            Dfs::Overflow(disc) => disc,
            Dfs::Stuck(disc) => {
                if disc.len() + 1 < n {
                    s.side[seed] = true;
                    for &(w, _) in &disc {
                        s.side[w] = true;
                    }
                    let value = g.edges().iter().filter(|e| crosses(e, &s.side)).count();
                    if value <= params.c {
                        let mut x: Vec<_> = disc.iter().map(|&(w, _)| w).collect();
                        x.push(seed);
                        x.sort_unstable();
                        emitted.insert(x);
                    }
                    s.side[seed] = false;
                    for &(w, _) in &disc {
                        s.side[w] = false;
                    }
                }
                disc
            }
        };
        if d + 1 > params.max_depth {
            continue;
        }
        let distinct = {
            let mut es: Vec<_> = trims.iter().map(|&(e, _)| e).collect();
            es.dedup();
            es
        };
        for &(w, e) in &discovery {
            if w == seed {
                continue;
            }
            let new_edge = distinct.binary_search(&e).is_err();
            if new_edge && distinct.len() + 1 > params.c {
                continue;
            }
            let mut next = trims.clone();
            let pos = next.binary_search(&(e, w)).unwrap_err();
            next.insert(pos, (e, w));
            if memo.insert(next.clone()) {
                stack.push((d + 1, next));
            }
        }
    }
    out.sides = emitted.into_iter().collect();
    out
}

/// Guess-and-trim search from `seed` starting at `depth` with the given
/// trims already applied. Returns every side with value at most `c` the
/// search emits (not filtered by the smaller-side rule).
pub fn enumerate_cuts_from_seed(
    g: &Hypergraph,
    params: &EnumerationParams,
    seed: VertexId,
    depth: usize,
    trims: &[(EdgeId, VertexId)],
) -> Result<SeedSearch> {
    if seed >= g.num_vertices() {
        return invalid(format!("seed {seed} out of range"));
    }
    let mut sorted = trims.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&(e, v)) = sorted
        .iter()
        .find(|&&(e, v)| e >= g.num_edges() || v >= g.num_vertices())
    {
        return invalid(format!("trim ({e}, {v}) out of range"));
    }
    let inc = g.incidence();
    let mut s = Scratch::new(g.num_vertices(), g.num_edges());
    Ok(search_seed(g, &inc, params, seed, depth, sorted, &mut s))
}

fn edges_meeting(g: &Hypergraph, mask: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|e| e.iter().any(|&v| mask[v]))
        .count()
}

/// Whether side `X` satisfies `|E(X)| <= |E(V∖X)|`.
pub(crate) fn is_small_side(g: &Hypergraph, mask: &[bool]) -> bool {
    let inside = edges_meeting(g, mask);
    let outside = g
        .edges()
        .iter()
        .filter(|e| e.iter().any(|&v| !mask[v]))
        .count();
    inside <= outside
}

fn finish(g: &Hypergraph, sides: BTreeSet<Vec<VertexId>>) -> Vec<Cut> {
    let n = g.num_vertices();
    let mut mask = vec![false; n];
    let mut out = Vec::new();
    for side in sides {
        for &v in &side {
            mask[v] = true;
        }
        if is_small_side(g, &mask) {
            let boundary_edges: Vec<_> = (0..g.num_edges())
                .filter(|&e| crosses(g.edge(e), &mask))
                .collect();
            out.push(Cut {
                value: boundary_edges.len(),
                side: side.clone(),
                boundary_edges,
            });
        }
        for &v in &side {
            mask[v] = false;
        }
    }
    out
}

/// Every connected cut of value at most `c` whose small side meets at most
/// `budget` hyperedges, deduplicated by side.
pub fn enumerate_connected_cuts(g: &Hypergraph, params: &EnumerationParams) -> Vec<Cut> {
    enumerate_connected_cuts_traced(g, params).cuts
}

pub fn enumerate_connected_cuts_traced(g: &Hypergraph, params: &EnumerationParams) -> Enumeration {
    if params.c == 0 || g.num_vertices() < 2 {
        return Enumeration::default();
    }
    let inc = g.incidence();
    let n = g.num_vertices();
    let m = g.num_edges();
    let per_seed: Vec<SeedSearch> = (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n, m),
            |s, seed| search_seed(g, &inc, params, seed, 0, Vec::new(), s),
        )
        .collect();
    let mut sides = BTreeSet::new();
    let mut total = 0;
    let mut max_seed = 0;
    for r in per_seed {
        total += r.nodes;
        max_seed = max_seed.max(r.nodes);
        sides.extend(r.sides);
    }
    Enumeration {
        cuts: finish(g, sides),
        total_nodes: total,
        max_seed_nodes: max_seed,
    }
}

/// Exhaustive enumeration driven by boundary sets: for each set `F` of at
/// most `c` hyperedges, every union `X` of components of `G − F` with
/// `∂X = F` exactly. Output obeys the same connected-cut filter as
/// [`enumerate_connected_cuts`] and needs no expansion assumption.
pub fn enumerate_cuts_by_boundary(g: &Hypergraph, c: usize) -> Result<Vec<Cut>> {
    if !g.is_connected_graph() {
        return invalid("boundary enumeration needs a connected hypergraph");
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    if c == 0 || n < 2 {
        return Ok(Vec::new());
    }
    let k_max = c.min(m);
    let mut sides = BTreeSet::new();
    for k in 1..=k_max {
        let mut f: Vec<EdgeId> = (0..k).collect();
        let mut removed = vec![false; m];
        loop {
            for &e in &f {
                removed[e] = true;
            }
            collect_for_boundary(g, &f, &removed, &mut sides);
            for &e in &f {
                removed[e] = false;
            }
            // next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && f[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            f[i - 1] += 1;
            for j in i..k {
                f[j] = f[j - 1] + 1;
            }
        }
    }
    Ok(finish(g, sides))
}

fn collect_for_boundary(
    g: &Hypergraph,
    f: &[EdgeId],
    removed: &[bool],
    sides: &mut BTreeSet<Vec<VertexId>>,
) {
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for (id, e) in g.edges().iter().enumerate() {
        if !removed[id] {
            for &v in &e[1..] {
                uf.union(e[0], v);
            }
        }
    }
    let (comp, q) = uf.dense_labels();
    if !(2..=24).contains(&q) {
        // q > 24 cannot happen on a connected graph with c*(r-1) small;
        // guard against pathological ranks rather than blow up.
        debug_assert!(q < 2, "too many components for boundary enumeration");
        return;
    }
    // each boundary edge as a bitmask over components
    let fm: Vec<u32> = f
        .iter()
        .map(|&e| g.edge(e).iter().fold(0u32, |a, &v| a | 1 << comp[v]))
        .collect();
    if fm.iter().any(|&b| b.count_ones() < 2) {
        return;
    }
    let full = (1u32 << q) - 1;
    for x in 1..full {
        if fm.iter().any(|&b| b & x == 0 || b & !x & full == 0) {
            continue;
        }
        // components inside X must be linked through the restricted F edges
        let mut reach = x & x.wrapping_neg();
        loop {
            let mut next = reach;
            for &b in &fm {
                if b & reach != 0 {
                    next |= b & x;
                }
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != x {
            continue;
        }
        sides.insert((0..n).filter(|&v| x >> comp[v] & 1 == 1).collect());
    }
}
