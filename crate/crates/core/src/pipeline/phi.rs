//! φ-Sparsify: contract every hyperedge that no useful partition needs.

use num_rational::Ratio;

use crate::auxgraph::{apply_contraction_to_aux, build_pruned_auxiliary_graph};
use crate::enumerate::{enumerate_connected_cuts, enumerate_cuts_by_boundary, EnumerationParams};
use crate::error::{invalid, Result};
use crate::hypergraph::{contract, Hypergraph, TerminalSet};
use crate::pipeline::{per_component, SparsifierOutput};

/// Sparsifies a φ-expander. With `safe_mode` (or whenever the budget
/// `⌊c·φ⁻¹⌋` reaches `m`) cuts come from exhaustive boundary enumeration,
/// so the output is correct whatever the actual expansion.
pub fn phi_sparsify(
    g: &Hypergraph,
    t: &TerminalSet,
    phi_inv: Ratio<u64>,
    c: usize,
    safe_mode: bool,
) -> Result<SparsifierOutput> {
    if c == 0 {
        return invalid("threshold c must be at least 1");
    }
    t.validate(g.num_vertices())?;
    per_component(g, t, |h, tt| connected_phi_sparsify(h, tt, phi_inv, c, safe_mode))
}

fn connected_phi_sparsify(
    g: &Hypergraph,
    t: &TerminalSet,
    phi_inv: Ratio<u64>,
    c: usize,
    safe_mode: bool,
) -> Result<SparsifierOutput> {
    if g.num_edges() == 0 {
        return Ok(SparsifierOutput::identity(g, t));
    }
    let params = EnumerationParams::new(c, phi_inv, g.rank())?;
    let cuts = if safe_mode || params.budget >= g.num_edges() {
        enumerate_cuts_by_boundary(g, c)?
    } else {
        enumerate_connected_cuts(g, &params)
    };
    let mut aux = build_pruned_auxiliary_graph(g, t, &cuts, c)?;
    let mut contracted: Vec<_> = aux.registry().iter().copied().collect();
    for e in aux.edge_nodes() {
        if !aux.is_essential(e) {
            apply_contraction_to_aux(&mut aux, e)?;
            contracted.push(e);
        }
    }
    contracted.sort_unstable();
    let mut out = SparsifierOutput::from_contraction(contract(g, &contracted, t)?);
    out.stats.cuts_enumerated = cuts.len();
    out.stats.useful_partitions = aux.partitions().count();
    Ok(out)
}
