//! Exhaustive oracles over all vertex bipartitions. They refuse inputs
//! above a vertex-count limit instead of running for hours.

use std::collections::HashMap;

use crate::error::{check_limit, invalid, Result};
use crate::flow::Cut;
use crate::hypergraph::{vertex_mask, EdgeId, Hypergraph, TerminalSet, VertexId};

/// Default vertex-count limit for the exhaustive oracles.
pub const ORACLE_LIMIT: usize = 20;

pub(crate) fn edge_masks(g: &Hypergraph) -> Vec<u64> {
    g.edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |acc, &v| acc | (1 << v)))
        .collect()
}

pub(crate) fn bits_to_set(bits: u64, n: usize) -> Vec<VertexId> {
    (0..n).filter(|&v| bits >> v & 1 == 1).collect()
}

fn set_bits(set: &[VertexId]) -> u64 {
    set.iter().fold(0u64, |acc, &v| acc | (1 << v))
}

#[inline]
fn crosses(em: u64, x: u64) -> bool {
    em & x != 0 && em & !x != 0
}

pub(crate) fn boundary_count(masks: &[u64], x: u64) -> usize {
    masks.iter().filter(|&&em| crosses(em, x)).count()
}

fn boundary_ids(masks: &[u64], x: u64) -> Vec<EdgeId> {
    (0..masks.len()).filter(|&i| crosses(masks[i], x)).collect()
}

fn guard(g: &Hypergraph, limit: usize) -> Result<()> {
    check_limit("vertex count", g.num_vertices(), limit.min(63))
}

/// Minimum (A,B)-cut value and every minimizing side, by exhaustive scan.
pub fn brute_force_mincut(
    g: &Hypergraph,
    a: &[VertexId],
    b: &[VertexId],
) -> Result<(usize, Vec<Vec<VertexId>>)> {
    brute_force_mincut_with_limit(g, a, b, ORACLE_LIMIT)
}

pub fn brute_force_mincut_with_limit(
    g: &Hypergraph,
    a: &[VertexId],
    b: &[VertexId],
    limit: usize,
) -> Result<(usize, Vec<Vec<VertexId>>)> {
    guard(g, limit)?;
    let n = g.num_vertices();
    vertex_mask(n, a)?;
    vertex_mask(n, b)?;
    let (am, bm) = (set_bits(a), set_bits(b));
    if am == 0 || bm == 0 {
        return invalid("mincut needs nonempty A and B");
    }
    if am & bm != 0 {
        return invalid("A and B intersect");
    }
    let masks = edge_masks(g);
    let free: Vec<VertexId> = (0..n).filter(|&v| (am | bm) >> v & 1 == 0).collect();
    let mut best = usize::MAX;
    let mut sides = Vec::new();
    for sub in 0u64..(1 << free.len()) {
        let mut x = am;
        for (i, &v) in free.iter().enumerate() {
            if sub >> i & 1 == 1 {
                x |= 1 << v;
            }
        }
        let val = boundary_count(&masks, x);
        if val < best {
            best = val;
            sides.clear();
        }
        if val == best {
            sides.push(bits_to_set(x, n));
        }
    }
    Ok((best, sides))
}

pub(crate) fn connected_bits(masks: &[u64], x: u64) -> bool {
    if x == 0 {
        return false;
    }
    let mut reach = x & x.wrapping_neg();
    loop {
        let mut next = reach;
        for &em in masks {
            let r = em & x;
            if r & reach != 0 {
                next |= r;
            }
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    reach == x
}

/// All cuts `(X, V∖X)` with value at most `c`, `|E(X)| <= |E(V∖X)|` and
/// G[X] connected. Works on disconnected graphs too (components of the
/// smaller-or-equal kind show up with value 0).
pub fn brute_force_connected_cuts(g: &Hypergraph, c: usize) -> Result<Vec<Cut>> {
    guard(g, ORACLE_LIMIT)?;
    let n = g.num_vertices();
    let masks = edge_masks(g);
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for x in 1..full {
        let val = boundary_count(&masks, x);
        if val > c {
            continue;
        }
        let inside = masks.iter().filter(|&&em| em & x != 0).count();
        let outside = masks.iter().filter(|&&em| em & !x & full != 0).count();
        if inside > outside || !connected_bits(&masks, x) {
            continue;
        }
        out.push(Cut {
            side: bits_to_set(x, n),
            boundary_edges: boundary_ids(&masks, x),
            value: val,
        });
    }
    out.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(out)
}

/// Per terminal bipartition with mincut at most `c`: its value and the
/// intersection of all mincut boundaries. Keyed by the canonical side
/// (the one holding the smallest terminal).
pub(crate) fn partition_mincuts(
    g: &Hypergraph,
    t: &TerminalSet,
    c: usize,
) -> Result<Vec<(Vec<VertexId>, usize, Vec<EdgeId>)>> {
    guard(g, ORACLE_LIMIT)?;
    t.validate(g.num_vertices())?;
    let n = g.num_vertices();
    let masks = edge_masks(g);
    let m = masks.len();
    let words = m.div_ceil(64).max(1);
    let tv = t.to_vec();
    let tbits = set_bits(&tv);
    let first = match tv.first() {
        Some(&f) => 1u64 << f,
        None => return Ok(Vec::new()),
    };
    let full = (1u64 << n) - 1;
    let mut table: HashMap<u64, (usize, Vec<u64>)> = HashMap::new();
    for x in 1..full {
        let ta = x & tbits;
        if ta == 0 || ta == tbits {
            continue;
        }
        let key = if ta & first != 0 { ta } else { tbits & !ta };
        let mut bd = vec![0u64; words];
        let mut val = 0;
        for (i, &em) in masks.iter().enumerate() {
            if crosses(em, x) {
                bd[i / 64] |= 1 << (i % 64);
                val += 1;
            }
        }
        if val > c {
            continue;
        }
        match table.get_mut(&key) {
            None => {
                table.insert(key, (val, bd));
            }
            Some(entry) => {
                if val < entry.0 {
                    *entry = (val, bd);
                } else if val == entry.0 {
                    for (w, b) in entry.1.iter_mut().zip(&bd) {
                        *w &= b;
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = table
        .into_iter()
        .map(|(key, (val, bd))| {
            let common = (0..m).filter(|&i| bd[i / 64] >> (i % 64) & 1 == 1).collect();
            (bits_to_set(key, n), val, common)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Edges contained in every mincut of value at most `c` of some terminal
/// bipartition.
pub fn brute_force_essential(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<Vec<EdgeId>> {
    let mut ess: Vec<EdgeId> = partition_mincuts(g, t, c)?
        .into_iter()
        .flat_map(|(_, _, common)| common)
        .collect();
    ess.sort_unstable();
    ess.dedup();
    Ok(ess)
}
