//! SparsifySlow at desk scale: split on small cuts with many terminals on
//! both sides, and sparsify the unbreakable leaves with the exhaustive
//! essential-edge oracle.

use crate::brute::{bits_to_set, boundary_count, brute_force_essential, edge_masks, ORACLE_LIMIT};
use crate::error::{check_limit, invalid, Error, Result};
use crate::hypergraph::{contract, Hypergraph, ProjectionMap, TerminalSet, VertexId};
use crate::pipeline::divide::{combine, divide_mask};
use crate::pipeline::{side_mask, SparsifierOutput};
use crate::separation::reduce_to_degree_one;

/// `None` if no bipartition with at most `c` crossing edges has at least
/// `d` terminals on each side; otherwise one such side.
pub fn is_edge_unbreakable(g: &Hypergraph, t: &TerminalSet, d: usize, c: usize) -> Result<Option<Vec<VertexId>>> {
    check_limit("vertex count", g.num_vertices(), ORACLE_LIMIT)?;
    t.validate(g.num_vertices())?;
    let n = g.num_vertices();
    if n < 2 || t.len() < 2 * d.max(1) {
        return Ok(None);
    }
    let masks = edge_masks(g);
    let tbits = t.iter().fold(0u64, |a, v| a | 1 << v);
    let full = (1u64 << n) - 1;
    for x in 1..(1u64 << (n - 1)) {
        let a = (x & tbits).count_ones() as usize;
        let b = (!x & full & tbits).count_ones() as usize;
        if a >= d && b >= d && boundary_count(&masks, x) <= c {
            return Ok(Some(bits_to_set(x, n)));
        }
    }
    Ok(None)
}

/// Contracts non-essential edges one at a time, recomputing the essential
/// set after each contraction, until every edge is essential.
pub(crate) fn base_case(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    let mut out = SparsifierOutput::identity(g, t);
    loop {
        let ess = brute_force_essential(&out.sparsifier, &out.terminals, c)?;
        let free = (0..out.sparsifier.num_edges()).find(|e| ess.binary_search(e).is_err());
        let Some(e) = free else { break };
        let step = contract(&out.sparsifier, &[e], &out.terminals)?;
        out = out.then(SparsifierOutput::from_contraction(step))?;
    }
    out.stats.base_cases = 1;
    Ok(out)
}

fn slow_rec(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    check_limit("vertex count", g.num_vertices(), ORACLE_LIMIT)?;
    if let Some(side) = is_edge_unbreakable(g, t, 5 * c, c)? {
        let d = divide_mask(g, t, &side_mask(g.num_vertices(), &side))?;
        let o1 = slow_rec(&d.side1.graph, &d.side1.terminals, c)?;
        let o2 = slow_rec(&d.side2.graph, &d.side2.terminals, c)?;
        return combine(&d, &o1, &o2);
    }
    base_case(g, t, c)
}

/// SparsifySlow on an instance whose terminals all have degree at most one.
pub fn sparsify_slow_degree_one(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    if c == 0 {
        return invalid("threshold c must be at least 1");
    }
    t.validate(g.num_vertices())?;
    let deg = g.degrees();
    if let Some(v) = t.iter().find(|&v| deg[v] > 1) {
        return invalid(format!("terminal {v} has degree {}", deg[v]));
    }
    let mut out = slow_rec(g, t, c)?;
    out.stats.initial_potential = Some(t.len() as i64 - 5 * c as i64);
    Ok(out)
}

/// SparsifySlow on a general instance: terminals get `c` pendant copies,
/// the copies are sparsified, and the copy edges are contracted back.
pub fn sparsify_slow(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<SparsifierOutput> {
    if c == 0 {
        return invalid("threshold c must be at least 1");
    }
    t.validate(g.num_vertices())?;
    let red = reduce_to_degree_one(g, t, c)?;
    let inner = sparsify_slow_degree_one(&red.graph, &red.terminals, c)?;
    let copy_images: Vec<_> = (0..inner.sparsifier.num_edges())
        .filter(|&j| red.copy_edges.binary_search(&inner.kept_edges[j]).is_ok())
        .collect();
    let back = contract(&inner.sparsifier, &copy_images, &inner.terminals)?;
    let n = g.num_vertices();
    let map = (0..n)
        .map(|v| back.projection.apply(inner.projection.apply(v)))
        .collect();
    let projection = ProjectionMap::new(map, back.graph.num_vertices())
        .map_err(|e| Error::Internal(format!("degree-one reduction lost a vertex: {e}")))?;
    let kept_edges = back.edge_origin.iter().map(|&j| inner.kept_edges[j]).collect();
    Ok(SparsifierOutput {
        sparsifier: back.graph,
        terminals: t.project(&projection),
        projection,
        kept_edges,
        stats: inner.stats,
    })
}
