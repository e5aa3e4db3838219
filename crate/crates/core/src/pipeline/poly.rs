//! Polynomial-time sparsifier: split on sparse terminal cuts until the
//! instance is a terminal expander, then sparsify with the exhaustive oracle.

use num_rational::Ratio;

use crate::brute::{bits_to_set, boundary_count, edge_masks, ORACLE_LIMIT};
use crate::error::{check_limit, invalid, Result};
use crate::hypergraph::{Hypergraph, TerminalSet, VertexId};
use crate::pipeline::divide::{combine, divide_mask};
use crate::pipeline::slow::base_case;
use crate::pipeline::{side_mask, SparsifierOutput};

/// Exact minimum of `|∂X| / min(|X∩T|, |T∖X|)` over sets with terminals on
/// both sides, with a minimizing side.
pub fn terminal_expansion(g: &Hypergraph, t: &TerminalSet) -> Result<(Ratio<u64>, Vec<VertexId>)> {
    check_limit("vertex count", g.num_vertices(), ORACLE_LIMIT)?;
    t.validate(g.num_vertices())?;
    if t.len() < 2 {
        return invalid("terminal expansion needs at least two terminals");
    }
    let n = g.num_vertices();
    let masks = edge_masks(g);
    let tbits = t.iter().fold(0u64, |a, v| a | 1 << v);
    let full = (1u64 << n) - 1;
    let mut best: Option<(Ratio<u64>, u64)> = None;
    // sides are symmetric; keep vertex n-1 outside
    for x in 1..(1u64 << (n - 1)) {
        let a = (x & tbits).count_ones() as u64;
        let b = (!x & full & tbits).count_ones() as u64;
        if a == 0 || b == 0 {
            continue;
        }
        let r = Ratio::new(boundary_count(&masks, x) as u64, a.min(b));
        if best.is_none_or(|(v, _)| r < v) {
            best = Some((r, x));
        }
    }
    let (r, x) = best.expect("two terminals give a qualifying set");
    Ok((r, bits_to_set(x, n)))
}

/// Whether `expansion < 2φ` for `φ = 1 / (4·log₂(k·c))`, the approximation
/// factor being 1 for an exact cut finder.
fn below_split_threshold(expansion: Ratio<u64>, k: usize, c: usize) -> bool {
    let log = ((k * c) as f64).log2().max(1.0);
    (*expansion.numer() as f64) * 2.0 * log < *expansion.denom() as f64
}

fn poly_rec(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    check_limit("vertex count", g.num_vertices(), ORACLE_LIMIT)?;
    if t.len() >= 2 {
        let (exp, side) = terminal_expansion(g, t)?;
        if below_split_threshold(exp, t.len(), c) {
            let d = divide_mask(g, t, &side_mask(g.num_vertices(), &side))?;
            let o1 = poly_rec(&d.side1.graph, &d.side1.terminals, c)?;
            let o2 = poly_rec(&d.side2.graph, &d.side2.terminals, c)?;
            return combine(&d, &o1, &o2);
        }
    }
    base_case(g, t, c)
}

pub fn polytime_sparsify(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    if c == 0 {
        return invalid("threshold c must be at least 1");
    }
    t.validate(g.num_vertices())?;
    poly_rec(g, t, c)
}
