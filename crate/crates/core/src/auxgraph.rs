//! Tripartite auxiliary graph over terminal partitions, connected cuts and
//! hyperedges, with usefulness pruning and incremental maintenance.
//!
//! A partition is stored by its canonical side, the one holding the smallest
//! terminal. A partition counts as useful only when both of its A-minimal
//! mincuts (one per orientation) are connected: since partitions are
//! unordered, checking one orientation would make the result depend on which
//! terminal happens to be smallest.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::flow::{is_connected_mask, Cut, CutValue, FlowEngine};
use crate::hypergraph::{mask_to_set, EdgeId, Hypergraph, TerminalSet, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminalPartition {
    pub side_a: Vec<VertexId>,
}

impl TerminalPartition {
    /// Canonical form of `(A, T∖A)`. Fails on trivial partitions.
    pub fn new(a: &[VertexId], t: &TerminalSet) -> Result<Self> {
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        if let Some(&v) = a.iter().find(|&&v| !t.contains(v)) {
            return invalid(format!("{v} is not a terminal"));
        }
        if a.is_empty() || a.len() == t.len() {
            return invalid("trivial terminal partition");
        }
        let first = t.iter().next().expect("nonempty");
        let side_a = if a.first() == Some(&first) {
            a
        } else {
            t.iter().filter(|v| a.binary_search(v).is_err()).collect()
        };
        Ok(Self { side_a })
    }

    pub fn side_b(&self, t: &TerminalSet) -> Vec<VertexId> {
        t.iter()
            .filter(|v| self.side_a.binary_search(v).is_err())
            .collect()
    }
}

/// Outcome of a usefulness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Usefulness {
    pub useful: bool,
    pub value: CutValue,
    /// The A-minimal mincut side for the canonical orientation.
    pub witness: Option<Vec<VertexId>>,
}

fn usefulness_with(
    g: &Hypergraph,
    inc: &[Vec<EdgeId>],
    engine: &mut FlowEngine,
    a: &[VertexId],
    b: &[VertexId],
) -> Result<Usefulness> {
    let fwd = engine.a_minimal(a, b)?;
    let Some(xa) = fwd.minimal_side else {
        return Ok(Usefulness {
            useful: false,
            value: fwd.value,
            witness: None,
        });
    };
    let bwd = engine.a_minimal(b, a)?;
    let xb = bwd.minimal_side.expect("mincut is symmetric");
    let useful = is_connected_mask(g, inc, &xa, a[0]) && is_connected_mask(g, inc, &xb, b[0]);
    Ok(Usefulness {
        useful,
        value: fwd.value,
        witness: Some(mask_to_set(&xa)),
    })
}

/// Whether `(A, T∖A)` is useful: its mincut is at most `c` and every
/// mincut has connected sides.
pub fn is_useful_partition(
    g: &Hypergraph,
    a: &[VertexId],
    t: &TerminalSet,
    c: usize,
) -> Result<Usefulness> {
    t.validate(g.num_vertices())?;
    TerminalPartition::new(a, t)?;
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    let b: Vec<_> = t.iter().filter(|v| a.binary_search(v).is_err()).collect();
    let mut engine = FlowEngine::new(g, c);
    usefulness_with(g, &g.incidence(), &mut engine, &a, &b)
}

/// Pruned auxiliary graph. Removed nodes stay in the arrays but are flagged
/// dead, so ids are stable under contraction.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    terminals: TerminalSet,
    n: usize,
    partitions: Vec<TerminalPartition>,
    mincut_value: Vec<usize>,
    partition_alive: Vec<bool>,
    partition_cuts: Vec<Vec<usize>>,
    cuts: Vec<Cut>,
    cut_partition: Vec<Option<usize>>,
    cut_alive: Vec<bool>,
    edge_cuts: BTreeMap<EdgeId, Vec<usize>>,
    registry: BTreeSet<EdgeId>,
}

/// Canonical comparison form of an auxiliary graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxSnapshot {
    /// `(canonical side, mincut value)` per partition.
    pub partitions: BTreeSet<(Vec<VertexId>, usize)>,
    /// `(side holding the smallest vertex, boundary edges)` per cut.
    pub cuts: BTreeSet<(Vec<VertexId>, Vec<EdgeId>)>,
    /// Partition-cut adjacency by the same keys.
    pub adj_pc: BTreeSet<(Vec<VertexId>, Vec<VertexId>)>,
    pub edge_nodes: BTreeSet<EdgeId>,
}

fn cut_key(side: &[VertexId], n: usize) -> Vec<VertexId> {
    if side.first() == Some(&0) {
        side.to_vec()
    } else {
        let mut mask = vec![true; n];
        for &v in side {
            mask[v] = false;
        }
        mask_to_set(&mask)
    }
}

fn induced_partition(side: &[VertexId], t: &TerminalSet) -> Option<TerminalPartition> {
    let a: Vec<_> = side.iter().copied().filter(|&v| t.contains(v)).collect();
    TerminalPartition::new(&a, t).ok()
}

/// Deduplicate cuts by bipartition, keeping the first side seen.
fn dedup_cuts(n: usize, cuts: &[Cut]) -> (Vec<Cut>, BTreeMap<Vec<VertexId>, usize>) {
    let mut keys = BTreeMap::new();
    let mut out = Vec::new();
    for cut in cuts {
        let key = cut_key(&cut.side, n);
        if let std::collections::btree_map::Entry::Vacant(e) = keys.entry(key) {
            e.insert(out.len());
            out.push(cut.clone());
        }
    }
    (out, keys)
}

impl AuxGraph {
    fn assemble(
        g: &Hypergraph,
        t: &TerminalSet,
        cuts: Vec<Cut>,
        partitions: Vec<(TerminalPartition, usize)>,
    ) -> Self {
        let n = g.num_vertices();
        let index: BTreeMap<&TerminalPartition, usize> =
            partitions.iter().enumerate().map(|(i, (p, _))| (p, i)).collect();
        let mut partition_cuts = vec![Vec::new(); partitions.len()];
        let mut cut_partition = vec![None; cuts.len()];
        for (ci, cut) in cuts.iter().enumerate() {
            if let Some(p) = induced_partition(&cut.side, t) {
                if let Some(&pi) = index.get(&p) {
                    if partitions[pi].1 == cut.value {
                        partition_cuts[pi].push(ci);
                        cut_partition[ci] = Some(pi);
                    }
                }
            }
        }
        let cut_alive: Vec<bool> = cut_partition.iter().map(Option::is_some).collect();
        let partition_alive = partition_cuts.iter().map(|c| !c.is_empty()).collect();
        let mut edge_cuts: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (ci, cut) in cuts.iter().enumerate() {
            if cut_alive[ci] {
                for &e in &cut.boundary_edges {
                    edge_cuts.entry(e).or_default().push(ci);
                }
            }
        }
        let registry = (0..g.num_edges())
            .filter(|e| !edge_cuts.contains_key(e))
            .collect();
        let (parts, values) = partitions.into_iter().unzip();
        Self {
            terminals: t.clone(),
            n,
            partitions: parts,
            mincut_value: values,
            partition_alive,
            partition_cuts,
            cuts,
            cut_partition,
            cut_alive,
            edge_cuts,
            registry,
        }
    }

    pub fn terminals(&self) -> &TerminalSet {
        &self.terminals
    }

    /// Live partitions with their mincut values.
    pub fn partitions(&self) -> impl Iterator<Item = (usize, &TerminalPartition, usize)> + '_ {
        (0..self.partitions.len())
            .filter(|&i| self.partition_alive[i])
            .map(|i| (i, &self.partitions[i], self.mincut_value[i]))
    }

    /// Live cuts.
    pub fn cuts(&self) -> impl Iterator<Item = (usize, &Cut)> + '_ {
        (0..self.cuts.len())
            .filter(|&i| self.cut_alive[i])
            .map(|i| (i, &self.cuts[i]))
    }

    /// Live cuts adjacent to partition `p`.
    pub fn partition_neighbors(&self, p: usize) -> Vec<usize> {
        self.partition_cuts[p]
            .iter()
            .copied()
            .filter(|&c| self.cut_alive[c])
            .collect()
    }

    /// Live cuts whose boundary contains `e`.
    pub fn edge_neighbors(&self, e: EdgeId) -> Vec<usize> {
        self.edge_cuts
            .get(&e)
            .map(|cs| cs.iter().copied().filter(|&c| self.cut_alive[c]).collect())
            .unwrap_or_default()
    }

    /// Hyperedges adjacent to at least one live cut.
    pub fn edge_nodes(&self) -> BTreeSet<EdgeId> {
        self.edge_cuts
            .iter()
            .filter(|(_, cs)| cs.iter().any(|&c| self.cut_alive[c]))
            .map(|(&e, _)| e)
            .collect()
    }

    /// Edges that were never adjacent to a surviving cut.
    pub fn registry(&self) -> &BTreeSet<EdgeId> {
        &self.registry
    }

    /// Whether some live partition has all its cuts containing `e`.
    pub fn is_essential(&self, e: EdgeId) -> bool {
        let ne: BTreeSet<usize> = self.edge_neighbors(e).into_iter().collect();
        ne.iter()
            .filter_map(|&c| self.cut_partition[c])
            .any(|p| self.partition_neighbors(p).iter().all(|c| ne.contains(c)))
    }

    pub fn snapshot(&self) -> AuxSnapshot {
        let n = self.n;
        let mut s = AuxSnapshot {
            partitions: BTreeSet::new(),
            cuts: BTreeSet::new(),
            adj_pc: BTreeSet::new(),
            edge_nodes: self.edge_nodes(),
        };
        for (pi, p, v) in self.partitions() {
            s.partitions.insert((p.side_a.clone(), v));
            for c in self.partition_neighbors(pi) {
                s.adj_pc
                    .insert((p.side_a.clone(), cut_key(&self.cuts[c].side, n)));
            }
        }
        for (_, cut) in self.cuts() {
            s.cuts
                .insert((cut_key(&cut.side, n), cut.boundary_edges.clone()));
        }
        s
    }

    /// Graphviz rendering. Partitions are boxes, cuts ellipses, hyperedges
    /// diamonds.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph aux {\n");
        for (pi, p, v) in self.partitions() {
            let _ = writeln!(
                out,
                "  p{pi} [shape=box, label=\"A={:?} λ={v}\"];",
                p.side_a
            );
        }
        for (ci, cut) in self.cuts() {
            let _ = writeln!(
                out,
                "  c{ci} [shape=ellipse, label=\"X={:?}\"];",
                cut.side
            );
        }
        for e in self.edge_nodes() {
            let _ = writeln!(out, "  e{e} [shape=diamond, label=\"e{e}\"];");
        }
        for (pi, _, _) in self.partitions() {
            for ci in self.partition_neighbors(pi) {
                let _ = writeln!(out, "  p{pi} -> c{ci};");
            }
        }
        for (ci, cut) in self.cuts() {
            for e in &cut.boundary_edges {
                let _ = writeln!(out, "  c{ci} -> e{e};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn candidate_partitions(cuts: &[Cut], t: &TerminalSet) -> Vec<TerminalPartition> {
    let set: BTreeSet<_> = cuts
        .iter()
        .filter_map(|c| induced_partition(&c.side, t))
        .collect();
    set.into_iter().collect()
}

/// Pruned auxiliary graph from enumerated connected cuts. Each candidate
/// partition is kept only if useful, and its A-minimal mincut is added to
/// the cut set if enumeration missed it.
pub fn build_pruned_auxiliary_graph(
    g: &Hypergraph,
    t: &TerminalSet,
    cuts: &[Cut],
    c: usize,
) -> Result<AuxGraph> {
    t.validate(g.num_vertices())?;
    let n = g.num_vertices();
    let (mut cuts, keys) = dedup_cuts(n, cuts);
    if t.len() < 2 {
        return Ok(AuxGraph::assemble(g, t, cuts, Vec::new()));
    }
    let candidates = candidate_partitions(&cuts, t);
    let inc = g.incidence();
    let base = FlowEngine::new(g, c);
    let tested: Vec<Result<(TerminalPartition, Usefulness)>> = candidates
        .into_par_iter()
        .map_init(
            || base.clone(),
            |engine, p| {
                let b = p.side_b(t);
                let u = usefulness_with(g, &inc, engine, &p.side_a, &b)?;
                Ok((p, u))
            },
        )
        .collect();
    let mut partitions = Vec::new();
    let mut extra = BTreeSet::new();
    for r in tested {
        let (p, u) = r?;
        if !u.useful {
            continue;
        }
        let value = u.value.exact().expect("useful implies within threshold");
        let w = u.witness.expect("useful implies witness");
        if !keys.contains_key(&cut_key(&w, n)) {
            extra.insert(w);
        }
        partitions.push((p, value));
    }
    for side in extra {
        cuts.push(Cut::from_side(g, side)?);
    }
    Ok(AuxGraph::assemble(g, t, cuts, partitions))
}

/// The graph as defined before pruning: every nontrivial partition induced
/// by an enumerated cut, with mincut value from flow, and no usefulness test.
pub fn build_unpruned_auxiliary_graph(
    g: &Hypergraph,
    t: &TerminalSet,
    cuts: &[Cut],
    c: usize,
) -> Result<AuxGraph> {
    t.validate(g.num_vertices())?;
    let (cuts, _) = dedup_cuts(g.num_vertices(), cuts);
    let mut engine = FlowEngine::new(g, c);
    let mut partitions = Vec::new();
    if t.len() >= 2 {
        for p in candidate_partitions(&cuts, t) {
            if let CutValue::Exact(v) = engine.mincut_value(&p.side_a, &p.side_b(t))? {
                partitions.push((p, v));
            }
        }
    }
    Ok(AuxGraph::assemble(g, t, cuts, partitions))
}

/// Edges `e` such that some partition has every adjacent cut containing `e`.
pub fn essential_edges_from_aux(aux: &AuxGraph) -> Vec<EdgeId> {
    let mut out = BTreeSet::new();
    for (pi, _, _) in aux.partitions() {
        let mut common: Option<BTreeSet<EdgeId>> = None;
        for ci in aux.partition_neighbors(pi) {
            let bd: BTreeSet<_> = aux.cuts[ci].boundary_edges.iter().copied().collect();
            common = Some(match common {
                None => bd,
                Some(prev) => prev.intersection(&bd).copied().collect(),
            });
        }
        out.extend(common.unwrap_or_default());
    }
    out.into_iter().collect()
}

/// Remove the cuts containing `e`, then any partition left without cuts.
/// Fails if `e` is essential.
pub fn apply_contraction_to_aux(aux: &mut AuxGraph, e: EdgeId) -> Result<()> {
    if aux.is_essential(e) {
        return Err(Error::ContractViolation(format!(
            "edge {e} is essential for some partition"
        )));
    }
    for c in aux.edge_neighbors(e) {
        aux.cut_alive[c] = false;
        if let Some(p) = aux.cut_partition[c] {
            if aux.partition_neighbors(p).is_empty() {
                aux.partition_alive[p] = false;
            }
        }
    }
    Ok(())
}
