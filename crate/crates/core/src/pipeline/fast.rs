//! SparsifyFast: rounds of expander decomposition, peeling and φ-Sparsify.

use std::time::Instant;

use num_rational::Ratio;

use crate::error::Result;
use crate::expander::expander_decompose;
use crate::flow::FlowEngine;
use crate::hypergraph::{quotient, Contraction, Hypergraph, ProjectionMap, TerminalSet, UnionFind, VertexId};
use crate::pipeline::divide::{combine, divide_mask, Divided};
use crate::pipeline::phi::phi_sparsify;
use crate::pipeline::{ceil_log2, ratio_inv, PipelineConfig, RoundStats, SparsifierOutput};
use crate::separation::VertexSource;

/// `4·C′·r·c^k·⌈log₂ n⌉³`, saturating, capped by the config.
pub fn phi_inverse(config: &PipelineConfig, n: usize, r: usize) -> u64 {
    let l = ceil_log2(n);
    let c = config.c as u64;
    4u64.saturating_mul(config.c_prime)
        .saturating_mul(r.max(2) as u64)
        .saturating_mul(c.saturating_pow(config.c_exponent))
        .saturating_mul(l.saturating_pow(3))
        .min(config.phi_inv_cap)
        .max(1)
}

/// Identifies every pair of vertices sharing an edge whose local
/// connectivity exceeds `c`. No cut of value at most `c` separates such a
/// pair, so all thresholded terminal cuts survive, and the test stays valid
/// on the quotient. Passes stop after a batch of merges and continue on the
/// rebuilt quotient, which keeps later flow queries small. Vertices of
/// degree at most `c` are skipped without a flow query.
pub fn precontract(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<Contraction> {
    let mut cur = quotient(g, &ProjectionMap::identity(g.num_vertices()), t)?;
    loop {
        let n = cur.graph.num_vertices();
        let (labels, k) = precontract_pass(&cur.graph, c, (n / 32).max(32));
        if k == n {
            return Ok(cur);
        }
        let step = quotient(&cur.graph, &ProjectionMap::new(labels, k)?, &cur.terminals)?;
        cur = Contraction {
            projection: cur.projection.then(&step.projection)?,
            edge_origin: step.edge_origin.iter().map(|&j| cur.edge_origin[j]).collect(),
            graph: step.graph,
            terminals: step.terminals,
        };
    }
}

fn precontract_pass(g: &Hypergraph, c: usize, batch: usize) -> (Vec<VertexId>, usize) {
    let n = g.num_vertices();
    let deg = g.degrees();
    let mut engine = FlowEngine::new(g, c);
    let mut uf = UnionFind::new(n);
    let mut merges = 0;
    'edges: for e in g.edges() {
        let v0 = e[0];
        if deg[v0] <= c {
            continue;
        }
        for &v in &e[1..] {
            if deg[v] <= c || uf.find(v0) == uf.find(v) {
                continue;
            }
            // the search starts from the lighter endpoint
            let (a, b) = if deg[v0] <= deg[v] { (v0, v) } else { (v, v0) };
            if engine.exceeds(&[a], &[b], c) {
                uf.union(v0, v);
                merges += 1;
                if merges >= batch {
                    break 'edges;
                }
            }
        }
    }
    uf.dense_labels()
}

/// A (T, c)-sparsifier built by repeated decomposition rounds. Stops after
/// `max_iters` rounds or as soon as a round fails to remove an edge.
pub fn sparsify_fast(g: &Hypergraph, t: &TerminalSet, config: &PipelineConfig) -> Result<SparsifierOutput> {
    config.validate()?;
    t.validate(g.num_vertices())?;
    let max_iters = config
        .max_iters
        .unwrap_or_else(|| ceil_log2(g.num_edges()) as usize);
    let mut out = SparsifierOutput::identity(g, t);
    for _ in 0..max_iters.max(1) {
        let start = Instant::now();
        let m_before = out.sparsifier.num_edges();
        if m_before == 0 {
            break;
        }
        let (round, mut stats) = fast_round(&out.sparsifier, &out.terminals, config)?;
        stats.m_before = m_before;
        stats.m_after = round.sparsifier.num_edges();
        stats.millis = start.elapsed().as_millis();
        out = out.then(round)?;
        out.stats.rounds.push(stats.clone());
        if stats.m_after >= m_before {
            break;
        }
    }
    Ok(out)
}

fn fast_round(g: &Hypergraph, t: &TerminalSet, config: &PipelineConfig) -> Result<(SparsifierOutput, RoundStats)> {
    let c = config.c;
    let mut out = SparsifierOutput::identity(g, t);
    if config.precontract {
        out = out.then(SparsifierOutput::from_contraction(precontract(g, t, c)?))?;
    }
    let h = out.sparsifier.clone();
    let ht = out.terminals.clone();
    let phi_inv = phi_inverse(config, h.num_vertices(), h.rank());
    let dec = expander_decompose(&h, ratio_inv(phi_inv))?;
    let stats = RoundStats {
        m_after_precontract: h.num_edges(),
        phi_inv,
        parts: dec.parts.len(),
        uncertified_parts: dec.certified.iter().filter(|&&b| !b).count(),
        crossing_edges: dec.crossing_edges.len(),
        ..RoundStats::default()
    };
    let mut assign = vec![0usize; h.num_vertices()];
    for (i, part) in dec.parts.iter().enumerate() {
        for &v in part {
            assign[v] = i;
        }
    }
    let conquered = peel(&h, &ht, assign, &dec.certified, Ratio::from_integer(phi_inv), config)?;
    Ok((out.then(conquered)?, stats))
}

/// Splits off the lowest-numbered part, sparsifies it, and continues on the
/// rest; anchors of the rest go to the first later part meeting their edge.
/// Outputs are combined in reverse order.
fn peel(
    g: &Hypergraph,
    t: &TerminalSet,
    assign: Vec<usize>,
    certified: &[bool],
    phi_inv: Ratio<u64>,
    config: &PipelineConfig,
) -> Result<SparsifierOutput> {
    let mut stack: Vec<(Divided, SparsifierOutput)> = Vec::new();
    let mut cur_g = g.clone();
    let mut cur_t = t.clone();
    let mut cur_assign = assign;
    let last = loop {
        let first = *cur_assign.iter().min().expect("nonempty graph");
        let safe = |p: usize| config.safe_mode || !certified[p];
        if cur_assign.iter().all(|&p| p == first) {
            break phi_sparsify(&cur_g, &cur_t, phi_inv, config.c, safe(first))?;
        }
        let in1: Vec<bool> = cur_assign.iter().map(|&p| p == first).collect();
        let d = divide_mask(&cur_g, &cur_t, &in1)?;
        let out1 = phi_sparsify(&d.side1.graph, &d.side1.terminals, phi_inv, config.c, safe(first))?;
        let next_assign: Vec<usize> = d
            .side2
            .vertex_source
            .iter()
            .map(|s| match *s {
                VertexSource::Original(v) => cur_assign[v],
                VertexSource::Anchor(tag) => cur_g
                    .edge(tag.edge)
                    .iter()
                    .filter(|&&v: &&VertexId| !in1[v])
                    .map(|&v| cur_assign[v])
                    .min()
                    .expect("crossing edge meets side two"),
            })
            .collect();
        cur_g = d.side2.graph.clone();
        cur_t = d.side2.terminals.clone();
        cur_assign = next_assign;
        stack.push((d, out1));
    };
    let mut acc = last;
    while let Some((d, out1)) = stack.pop() {
        acc = combine(&d, &out1, &acc)?;
    }
    Ok(acc)
}
