//! End-to-end sparsifier constructions.

mod divide;
mod fast;
mod phi;
mod poly;
mod slow;

pub use divide::{combine, divide, Divided};
pub use fast::{phi_inverse, precontract, sparsify_fast};
pub use phi::phi_sparsify;
pub use poly::{polytime_sparsify, terminal_expansion};
pub use slow::{is_edge_unbreakable, sparsify_slow, sparsify_slow_degree_one};

use num_rational::Ratio;

use crate::error::{invalid, Result};
use crate::hypergraph::{
    induced_subgraph, Contraction, EdgeId, Hypergraph, ProjectionMap, TerminalSet, VertexId,
};

/// Tunables shared by the pipelines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub c: usize,
    /// Constant in `φ⁻¹ = 4·C′·r·c^k·⌈log₂ n⌉³`.
    pub c_prime: u64,
    /// Exponent `k` of `c` in the formula above.
    pub c_exponent: u32,
    /// Upper bound on `φ⁻¹`.
    pub phi_inv_cap: u64,
    /// Round limit; `None` means `⌈log₂ m⌉`.
    pub max_iters: Option<usize>,
    /// Force exhaustive enumeration in every part.
    pub safe_mode: bool,
    /// Identify vertex pairs whose local connectivity exceeds `c` before
    /// each round.
    pub precontract: bool,
    /// Seed for randomized components. The current pipelines are
    /// deterministic and only record it.
    pub seed: u64,
}

impl PipelineConfig {
    pub fn new(c: usize) -> Self {
        Self {
            c,
            c_prime: 1,
            c_exponent: 4,
            phi_inv_cap: 1 << 20,
            max_iters: None,
            safe_mode: false,
            precontract: true,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 {
            return invalid("threshold c must be at least 1");
        }
        if self.c_prime == 0 {
            return invalid("C' must be at least 1");
        }
        if self.phi_inv_cap == 0 {
            return invalid("phi_inv cap must be at least 1");
        }
        Ok(())
    }
}

/// Telemetry of one SparsifyFast round.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    pub m_before: usize,
    pub m_after_precontract: usize,
    pub m_after: usize,
    pub phi_inv: u64,
    pub parts: usize,
    pub uncertified_parts: usize,
    pub crossing_edges: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    pub rounds: Vec<RoundStats>,
    /// Connected cuts handed to auxiliary-graph construction.
    pub cuts_enumerated: usize,
    /// Useful partitions across all auxiliary graphs.
    pub useful_partitions: usize,
    /// Leaves of the slow/polytime recursion.
    pub base_cases: usize,
    /// `|T| − 5c` at the root of the slow recursion.
    pub initial_potential: Option<i64>,
}

impl PipelineStats {
    fn absorb(&mut self, other: &PipelineStats) {
        self.rounds.extend(other.rounds.iter().cloned());
        self.cuts_enumerated += other.cuts_enumerated;
        self.useful_partitions += other.useful_partitions;
        self.base_cases += other.base_cases;
        if self.initial_potential.is_none() {
            self.initial_potential = other.initial_potential;
        }
    }
}

/// A sparsifier `H` of the input with its projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsifierOutput {
    pub sparsifier: Hypergraph,
    pub projection: ProjectionMap,
    /// `π(T)`, anchor flags carried along.
    pub terminals: TerminalSet,
    /// `kept_edges[j]` is an input edge whose image is edge `j` of `H`.
    pub kept_edges: Vec<EdgeId>,
    pub stats: PipelineStats,
}

impl SparsifierOutput {
    pub fn identity(g: &Hypergraph, t: &TerminalSet) -> Self {
        Self {
            sparsifier: g.clone(),
            projection: ProjectionMap::identity(g.num_vertices()),
            terminals: t.clone(),
            kept_edges: (0..g.num_edges()).collect(),
            stats: PipelineStats::default(),
        }
    }

    pub(crate) fn from_contraction(c: Contraction) -> Self {
        Self {
            sparsifier: c.graph,
            projection: c.projection,
            terminals: c.terminals,
            kept_edges: c.edge_origin,
            stats: PipelineStats::default(),
        }
    }

    /// Follow this output by `next`, a sparsifier of this output's graph.
    pub fn then(mut self, next: SparsifierOutput) -> Result<Self> {
        let projection = self.projection.then(&next.projection)?;
        let kept_edges = next.kept_edges.iter().map(|&j| self.kept_edges[j]).collect();
        self.stats.absorb(&next.stats);
        Ok(Self {
            sparsifier: next.sparsifier,
            projection,
            terminals: next.terminals,
            kept_edges,
            stats: self.stats,
        })
    }
}

/// Runs `f` on each connected component and takes the disjoint union.
pub(crate) fn per_component<F>(g: &Hypergraph, t: &TerminalSet, mut f: F) -> Result<SparsifierOutput>
where
    F: FnMut(&Hypergraph, &TerminalSet) -> Result<SparsifierOutput>,
{
    let comps = g.components();
    if comps.len() <= 1 {
        return f(g, t);
    }
    let n = g.num_vertices();
    let mut map = vec![0; n];
    let mut edges = Vec::new();
    let mut kept = Vec::new();
    let mut stats = PipelineStats::default();
    let mut offset = 0;
    for comp in &comps {
        let ind = induced_subgraph(g, comp)?;
        let local = ind.local_ids(n);
        let sub_t = TerminalSet::with_anchors(
            t.iter().filter(|&v| !t.is_anchor(v)).filter_map(|v| local[v]),
            t.anchors().filter_map(|v| local[v]),
        );
        let out = f(&ind.graph, &sub_t)?;
        for (i, &v) in ind.vertices.iter().enumerate() {
            map[v] = offset + out.projection.apply(i);
        }
        for (j, e) in out.sparsifier.edges().iter().enumerate() {
            edges.push(e.iter().map(|&w| w + offset).collect());
            kept.push(ind.edge_origin[out.kept_edges[j]]);
        }
        stats.absorb(&out.stats);
        offset += out.sparsifier.num_vertices();
    }
    let projection = ProjectionMap::new(map, offset)?;
    Ok(SparsifierOutput {
        sparsifier: Hypergraph::from_normalized(offset, edges),
        terminals: t.project(&projection),
        projection,
        kept_edges: kept,
        stats,
    })
}

/// `⌈log₂ x⌉`, at least 1.
pub(crate) fn ceil_log2(x: usize) -> u64 {
    let x = x.max(2);
    u64::from(usize::BITS - (x - 1).leading_zeros())
}

pub(crate) fn ratio_inv(phi_inv: u64) -> Ratio<u64> {
    Ratio::new(1, phi_inv.max(1))
}

/// Vertex sets as masks, for the divide helpers.
pub(crate) fn side_mask(n: usize, side: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in side {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceiling() {
        assert_eq!(ceil_log2(1), 1);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
    }

    #[test]
    fn config_validation() {
        assert!(PipelineConfig::new(0).validate().is_err());
        assert!(PipelineConfig::new(2).validate().is_ok());
    }

    #[test]
    fn components_union() {
        let g = Hypergraph::new(5, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let t = TerminalSet::new([0, 3]);
        let out = per_component(&g, &t, |h, tt| Ok(SparsifierOutput::identity(h, tt))).unwrap();
        assert_eq!(out.sparsifier.num_vertices(), 5);
        assert_eq!(out.kept_edges, vec![0, 1]);
        assert_eq!(out.terminals.to_vec(), vec![0, 3]);
    }
}
