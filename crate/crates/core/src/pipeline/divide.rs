//! Divide along a vertex bipartition and recombine the conquered halves.

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{crosses, vertex_mask, EdgeId, Hypergraph, ProjectionMap, TerminalSet, VertexId};
use crate::pipeline::SparsifierOutput;
use crate::separation::{separate_by_mask, side_of, Anchored, EdgeSource, SeparationResult, Side, VertexSource};

/// The two anchored subproblems of a bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divided {
    pub side1: Anchored,
    pub side2: Anchored,
    pub separation: SeparationResult,
    in1: Vec<bool>,
    crossing: Vec<(EdgeId, Vec<VertexId>)>,
    terminals: TerminalSet,
}

impl Divided {
    pub fn in_side_one(&self, v: VertexId) -> bool {
        self.in1[v]
    }

    /// Original ids and vertex lists of the crossing edges.
    pub fn crossing_edges(&self) -> &[(EdgeId, Vec<VertexId>)] {
        &self.crossing
    }
}

/// `(Ĝ[V1], T1)` and `(Ĝ[V2], T2)` where each `Ti` is `T` restricted to
/// `Vi` plus the side's anchors.
pub fn divide(g: &Hypergraph, t: &TerminalSet, v1: &[VertexId], v2: &[VertexId]) -> Result<Divided> {
    let n = g.num_vertices();
    let m1 = vertex_mask(n, v1)?;
    let m2 = vertex_mask(n, v2)?;
    if let Some(v) = (0..n).find(|&v| m1[v] == m2[v]) {
        return invalid(format!("not a partition of the vertex set at vertex {v}"));
    }
    divide_mask(g, t, &m1)
}

pub(crate) fn divide_mask(g: &Hypergraph, t: &TerminalSet, in1: &[bool]) -> Result<Divided> {
    t.validate(g.num_vertices())?;
    if in1.iter().all(|&b| b) || in1.iter().all(|&b| !b) {
        return invalid("both sides of a division must be nonempty");
    }
    let sep = separate_by_mask(g, in1)?;
    let side1 = side_of(&sep, in1, t, Side::One)?;
    let side2 = side_of(&sep, in1, t, Side::Two)?;
    let crossing = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| crosses(e, in1))
        .map(|(id, e)| (id, e.clone()))
        .collect();
    Ok(Divided {
        side1,
        side2,
        separation: sep.result,
        in1: in1.to_vec(),
        crossing,
        terminals: t.clone(),
    })
}

struct SideMap {
    local: Vec<Option<VertexId>>,
    relabel: Vec<Option<VertexId>>,
}

fn side_map(side: &Anchored, out: &SparsifierOutput, parent_n: usize, offset: usize) -> Result<(SideMap, usize)> {
    let h = &out.sparsifier;
    if out.projection.domain_size() != side.graph.num_vertices() {
        return Err(Error::Internal("conquered side has the wrong domain".into()));
    }
    let mut is_anchor_img = vec![false; h.num_vertices()];
    for (i, s) in side.vertex_source.iter().enumerate() {
        if matches!(s, VertexSource::Anchor(_)) {
            is_anchor_img[out.projection.apply(i)] = true;
        }
    }
    for (i, s) in side.vertex_source.iter().enumerate() {
        if matches!(s, VertexSource::Original(_)) && is_anchor_img[out.projection.apply(i)] {
            return Err(Error::Internal(format!(
                "anchor image {} also holds an original vertex",
                out.projection.apply(i)
            )));
        }
    }
    let mut relabel = vec![None; h.num_vertices()];
    let mut next = offset;
    for w in 0..h.num_vertices() {
        if !is_anchor_img[w] {
            relabel[w] = Some(next);
            next += 1;
        }
    }
    Ok((
        SideMap {
            local: side.local_of_original(parent_n),
            relabel,
        },
        next,
    ))
}

/// `H1 ∪ H2` without anchors or halves, plus every crossing edge mapped
/// through both projections.
pub fn combine(d: &Divided, out1: &SparsifierOutput, out2: &SparsifierOutput) -> Result<SparsifierOutput> {
    let n = d.in1.len();
    let (map1, mid) = side_map(&d.side1, out1, n, 0)?;
    let (map2, total) = side_map(&d.side2, out2, n, mid)?;
    let image = |v: VertexId| -> Result<VertexId> {
        let (map, out) = if d.in1[v] { (&map1, out1) } else { (&map2, out2) };
        let local = map.local[v].ok_or_else(|| Error::Internal(format!("vertex {v} missing from its side")))?;
        map.relabel[out.projection.apply(local)]
            .ok_or_else(|| Error::Internal(format!("vertex {v} maps onto an anchor")))
    };
    let mut edges = Vec::new();
    let mut kept = Vec::new();
    for (side, map, out) in [(&d.side1, &map1, out1), (&d.side2, &map2, out2)] {
        for (j, e) in out.sparsifier.edges().iter().enumerate() {
            match side.edge_source[out.kept_edges[j]] {
                EdgeSource::Half { .. } => continue,
                EdgeSource::Original(orig) => {
                    let mut img = Vec::with_capacity(e.len());
                    for &w in e {
                        img.push(map.relabel[w].ok_or_else(|| {
                            Error::Internal(format!("edge {orig} touches an anchor image"))
                        })?);
                    }
                    img.sort_unstable();
                    edges.push(img);
                    kept.push(orig);
                }
            }
        }
    }
    for (orig, e) in &d.crossing {
        let mut img = e.iter().map(|&v| image(v)).collect::<Result<Vec<_>>>()?;
        img.sort_unstable();
        img.dedup();
        edges.push(img);
        kept.push(*orig);
    }
    let map = (0..n).map(image).collect::<Result<Vec<_>>>()?;
    let projection = ProjectionMap::new(map, total)
        .map_err(|e| Error::Internal(format!("combined projection: {e}")))?;
    let mut stats = out1.stats.clone();
    stats.absorb(&out2.stats);
    Ok(SparsifierOutput {
        sparsifier: Hypergraph::from_normalized(total, edges),
        terminals: d.terminals.project(&projection),
        projection,
        kept_edges: kept,
        stats,
    })
}
