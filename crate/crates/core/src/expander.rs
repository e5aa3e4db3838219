//! Conductance and a recursive expander decomposition.
//!
//! Parts are split along any cut of conductance below `phi` until each part
//! certifies. Certification is exact: vacuous for parts with at most one
//! edge, by the bound `Φ >= 1/m` for connected parts when `phi <= 1/m`, or by
//! exhaustive search on small parts. Larger parts fall back to BFS sweep
//! cuts and are flagged uncertified if no sparse cut turns up.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::brute::{edge_masks, ORACLE_LIMIT};
use crate::error::{check_limit, invalid, Result};
use crate::hypergraph::{induced_subgraph, EdgeId, Hypergraph, VertexId};

/// Largest part checked exhaustively during decomposition.
pub const EXHAUSTIVE_PART_LIMIT: usize = 16;

/// Sweep seeds tried per uncertified part.
const SWEEP_SEEDS: usize = 32;

/// Conductance value. A side meeting no hyperedge gives `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conductance {
    Finite(Ratio<u64>),
    Infinite,
}

impl Conductance {
    fn of(boundary: usize, inside: usize, outside: usize) -> Self {
        let den = inside.min(outside);
        if den == 0 {
            Conductance::Infinite
        } else {
            Conductance::Finite(Ratio::new(boundary as u64, den as u64))
        }
    }

    pub fn at_least(self, phi: Ratio<u64>) -> bool {
        match self {
            Conductance::Finite(r) => r >= phi,
            Conductance::Infinite => true,
        }
    }
}

impl std::fmt::Display for Conductance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Conductance::Finite(r) => write!(f, "{r}"),
            Conductance::Infinite => write!(f, "inf"),
        }
    }
}

/// `|∂S| / min(|E(S)|, |E(V∖S)|)` where `E(S)` counts edges meeting `S`.
pub fn conductance(g: &Hypergraph, s: &[VertexId]) -> Result<Conductance> {
    let mask = g.mask(s)?;
    let k = mask.iter().filter(|&&b| b).count();
    if k == 0 || k == g.num_vertices() {
        return invalid("conductance of a trivial vertex set");
    }
    let mut bd = 0;
    let mut inside = 0;
    let mut outside = 0;
    for e in g.edges() {
        let any_in = e.iter().any(|&v| mask[v]);
        let any_out = e.iter().any(|&v| !mask[v]);
        bd += usize::from(any_in && any_out);
        inside += usize::from(any_in);
        outside += usize::from(any_out);
    }
    Ok(Conductance::of(bd, inside, outside))
}

/// Exact minimum conductance over all proper subsets, with a witness.
/// Graphs with fewer than two vertices have no proper subset and report
/// `Infinite` with an empty witness.
pub fn graph_conductance(g: &Hypergraph) -> Result<(Conductance, Vec<VertexId>)> {
    check_limit("vertex count", g.num_vertices(), ORACLE_LIMIT)?;
    Ok(exhaustive(g))
}

fn exhaustive(g: &Hypergraph) -> (Conductance, Vec<VertexId>) {
    let n = g.num_vertices();
    if n < 2 {
        return (Conductance::Infinite, Vec::new());
    }
    let masks = edge_masks(g);
    let full = (1u64 << n) - 1;
    let mut best = (Conductance::Infinite, 1u64);
    // complements give equal conductance, so fix vertex n-1 outside
    for x in 1..(1u64 << (n - 1)) {
        let mut bd = 0;
        let mut inside = 0;
        let mut outside = 0;
        for &em in &masks {
            let i = em & x != 0;
            let o = em & !x & full != 0;
            bd += usize::from(i && o);
            inside += usize::from(i);
            outside += usize::from(o);
        }
        let phi = Conductance::of(bd, inside, outside);
        if phi < best.0 {
            best = (phi, x);
        }
    }
    let witness = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
    (best.0, witness)
}

/// Best sweep cut over BFS orders from a few seeds. An upper bound on the
/// conductance, not a certificate.
pub fn graph_conductance_heuristic(g: &Hypergraph) -> (Conductance, Vec<VertexId>) {
    let n = g.num_vertices();
    if n < 2 {
        return (Conductance::Infinite, Vec::new());
    }
    let inc = g.incidence();
    let m = g.num_edges();
    let step = (n / SWEEP_SEEDS).max(1);
    let mut best = (Conductance::Infinite, Vec::new());
    for seed in (0..n).step_by(step).take(SWEEP_SEEDS) {
        let order = bfs_order(g, &inc, seed);
        let mut cnt = vec![0usize; m];
        let (mut bd, mut inside, mut full_in) = (0usize, 0usize, 0usize);
        let mut best_len = 0;
        let mut local = Conductance::Infinite;
        for (i, &v) in order.iter().enumerate().take(n - 1) {
            for &e in &inc[v] {
                let size = g.edge(e).len();
                let before = cnt[e];
                cnt[e] += 1;
                if before == 0 {
                    inside += 1;
                    bd += 1;
                }
                if cnt[e] == size {
                    bd -= 1;
                    full_in += 1;
                }
            }
            let phi = Conductance::of(bd, inside, m - full_in);
            if phi < local {
                local = phi;
                best_len = i + 1;
            }
        }
        if local < best.0 {
            let mut w = order[..best_len].to_vec();
            w.sort_unstable();
            best = (local, w);
        }
    }
    best
}

fn bfs_order(g: &Hypergraph, inc: &[Vec<EdgeId>], seed: VertexId) -> Vec<VertexId> {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut edge_seen = vec![false; g.num_edges()];
    // restart from unseen vertices so the order covers V
    for start in std::iter::once(seed).chain(0..n) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &e in &inc[u] {
                if std::mem::replace(&mut edge_seen[e], true) {
                    continue;
                }
                for &w in g.edge(e) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
    }
    order
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// Disjoint parts covering V, each sorted, ordered by smallest member.
    pub parts: Vec<Vec<VertexId>>,
    pub crossing_edges: Vec<EdgeId>,
    pub phi: Ratio<u64>,
    pub certified: Vec<bool>,
}

/// Edges meeting at least two parts.
pub fn crossing_edges(g: &Hypergraph, parts: &[Vec<VertexId>]) -> Vec<EdgeId> {
    let mut part_of = vec![usize::MAX; g.num_vertices()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    (0..g.num_edges())
        .filter(|&e| {
            let p0 = part_of[g.edge(e)[0]];
            g.edge(e).iter().any(|&v| part_of[v] != p0)
        })
        .collect()
}

/// Splits V until every part is a certified `phi`-expander or no sparse
/// cut can be found for it.
pub fn expander_decompose(g: &Hypergraph, phi: Ratio<u64>) -> Result<DecompositionResult> {
    if phi <= Ratio::from_integer(0) || phi > Ratio::from_integer(1) {
        return invalid("phi must lie in (0, 1]");
    }
    let mut work: Vec<Vec<VertexId>> = g.components();
    let mut done: Vec<(Vec<VertexId>, bool)> = Vec::new();
    while let Some(part) = work.pop() {
        if part.len() == 1 {
            done.push((part, true));
            continue;
        }
        let ind = induced_subgraph(g, &part)?;
        let h = &ind.graph;
        let lift = |local: &[VertexId]| -> Vec<VertexId> {
            local.iter().map(|&v| ind.vertices[v]).collect()
        };
        let split = |w: Vec<VertexId>, work: &mut Vec<Vec<VertexId>>| {
            let inside: BTreeSet<_> = w.iter().copied().collect();
            let rest = (0..h.num_vertices()).filter(|v| !inside.contains(v)).collect::<Vec<_>>();
            work.push(lift(&w));
            work.push(lift(&rest));
        };
        let comps = h.components();
        if comps.len() > 1 {
            for comp in comps {
                work.push(lift(&comp));
            }
            continue;
        }
        if h.num_edges() <= 1 || phi * Ratio::from_integer(h.num_edges() as u64) <= Ratio::from_integer(1) {
            done.push((part, true));
            continue;
        }
        if h.num_vertices() <= EXHAUSTIVE_PART_LIMIT {
            let (value, w) = exhaustive(h);
            if value.at_least(phi) {
                done.push((part, true));
            } else {
                split(w, &mut work);
            }
            continue;
        }
        let (value, w) = graph_conductance_heuristic(h);
        if value.at_least(phi) {
            done.push((part, false));
        } else {
            split(w, &mut work);
        }
    }
    done.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
    let (parts, certified): (Vec<_>, Vec<_>) = done.into_iter().unzip();
    Ok(DecompositionResult {
        crossing_edges: crossing_edges(g, &parts),
        parts,
        phi,
        certified,
    })
}

/// Whether the part's restriction has conductance at least `phi`, checked
/// exhaustively.
pub fn certify_part(g: &Hypergraph, part: &[VertexId], phi: Ratio<u64>) -> Result<bool> {
    let ind = induced_subgraph(g, part)?;
    let (value, _) = graph_conductance(&ind.graph)?;
    Ok(value.at_least(phi))
}
