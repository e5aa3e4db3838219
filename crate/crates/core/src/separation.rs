//! Anchored separation of crossing hyperedges and the degree-one terminal
//! reduction.

use crate::error::{invalid, Result};
use crate::hypergraph::{
    crosses, induced_subgraph, vertex_mask, EdgeId, Hypergraph, TerminalSet, VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    One,
    Two,
}

/// Provenance of an anchor vertex: the crossing edge it was made for, the
/// side it lives on, and its index 1..=4 (1, 2 on side one; 3, 4 on side two).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnchorTag {
    pub edge: EdgeId,
    pub side: Side,
    pub index: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexSource {
    Original(VertexId),
    Anchor(AnchorTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeSource {
    Original(EdgeId),
    Half { edge: EdgeId, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedEdge {
    pub original: EdgeId,
    /// Ids of the two halves inside the separated graph.
    pub half1: EdgeId,
    pub half2: EdgeId,
    /// Anchor vertex ids in the separated graph, indices 1..=4 in order.
    pub anchors: [VertexId; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationResult {
    pub separated: Vec<SeparatedEdge>,
    pub anchors_side1: Vec<VertexId>,
    pub anchors_side2: Vec<VertexId>,
}

/// The separated graph: original vertices keep their ids, anchors follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separated {
    pub graph: Hypergraph,
    pub vertex_source: Vec<VertexSource>,
    pub edge_source: Vec<EdgeSource>,
    pub result: SeparationResult,
}

fn partition_mask(n: usize, v1: &[VertexId], v2: &[VertexId]) -> Result<Vec<bool>> {
    let m1 = vertex_mask(n, v1)?;
    let m2 = vertex_mask(n, v2)?;
    for v in 0..n {
        if m1[v] == m2[v] {
            return invalid(format!(
                "({} , {}) is not a partition of the vertex set: vertex {v}",
                v1.len(),
                v2.len()
            ));
        }
    }
    Ok(m1)
}

/// Replaces every edge crossing `(V1, V2)` by two halves, each padded with
/// two fresh degree-one anchors.
pub fn separate_hyperedges(g: &Hypergraph, v1: &[VertexId], v2: &[VertexId]) -> Result<Separated> {
    let n = g.num_vertices();
    let in1 = partition_mask(n, v1, v2)?;
    separate_by_mask(g, &in1)
}

pub(crate) fn separate_by_mask(g: &Hypergraph, in1: &[bool]) -> Result<Separated> {
    let n = g.num_vertices();
    let mut vertex_source: Vec<VertexSource> = (0..n).map(VertexSource::Original).collect();
    let mut edges = Vec::with_capacity(g.num_edges());
    let mut edge_source = Vec::with_capacity(g.num_edges());
    let mut separated = Vec::new();
    let mut anchors_side1 = Vec::new();
    let mut anchors_side2 = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if !crosses(e, in1) {
            edges.push(e.clone());
            edge_source.push(EdgeSource::Original(id));
            continue;
        }
        let base = vertex_source.len();
        let anchors = [base, base + 1, base + 2, base + 3];
        for (i, &a) in anchors.iter().enumerate() {
            let side = if i < 2 { Side::One } else { Side::Two };
            vertex_source.push(VertexSource::Anchor(AnchorTag {
                edge: id,
                side,
                index: i as u8 + 1,
            }));
            if side == Side::One {
                anchors_side1.push(a);
            } else {
                anchors_side2.push(a);
            }
        }
        let mut h1: Vec<_> = e.iter().copied().filter(|&v| in1[v]).collect();
        h1.extend_from_slice(&anchors[..2]);
        let mut h2: Vec<_> = e.iter().copied().filter(|&v| !in1[v]).collect();
        h2.extend_from_slice(&anchors[2..]);
        edges.push(h1);
        edge_source.push(EdgeSource::Half {
            edge: id,
            side: Side::One,
        });
        edges.push(h2);
        edge_source.push(EdgeSource::Half {
            edge: id,
            side: Side::Two,
        });
        separated.push(SeparatedEdge {
            original: id,
            half1: edges.len() - 2,
            half2: edges.len() - 1,
            anchors,
        });
    }
    Ok(Separated {
        graph: Hypergraph::from_normalized(vertex_source.len(), edges),
        vertex_source,
        edge_source,
        result: SeparationResult {
            separated,
            anchors_side1,
            anchors_side2,
        },
    })
}

/// One side of a separation, relabeled densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchored {
    pub graph: Hypergraph,
    pub terminals: TerminalSet,
    /// Provenance of each local vertex relative to the parent graph.
    pub vertex_source: Vec<VertexSource>,
    /// Provenance of each local edge relative to the parent graph.
    pub edge_source: Vec<EdgeSource>,
}

impl Anchored {
    /// Local id of each parent vertex on this side.
    pub fn local_of_original(&self, parent_n: usize) -> Vec<Option<VertexId>> {
        let mut out = vec![None; parent_n];
        for (i, s) in self.vertex_source.iter().enumerate() {
            if let VertexSource::Original(v) = *s {
                out[v] = Some(i);
            }
        }
        out
    }
}

pub(crate) fn side_of(sep: &Separated, in1: &[bool], t: &TerminalSet, side: Side) -> Result<Anchored> {
    let n = in1.len();
    let keep_orig = |v: VertexId| (side == Side::One) == in1[v];
    let mut members: Vec<VertexId> = (0..n).filter(|&v| keep_orig(v)).collect();
    let anchors = match side {
        Side::One => &sep.result.anchors_side1,
        Side::Two => &sep.result.anchors_side2,
    };
    members.extend_from_slice(anchors);
    if members.is_empty() {
        return invalid("anchored subgraph of an empty side");
    }
    let ind = induced_subgraph(&sep.graph, &members)?;
    let vertex_source: Vec<_> = ind.vertices.iter().map(|&v| sep.vertex_source[v]).collect();
    let edge_source = ind.edge_origin.iter().map(|&e| sep.edge_source[e]).collect();
    let local = ind.local_ids(sep.graph.num_vertices());
    let terminals = TerminalSet::with_anchors(
        t.iter().filter(|&v| keep_orig(v)).map(|v| local[v].unwrap()),
        anchors.iter().map(|&a| local[a].unwrap()),
    );
    Ok(Anchored {
        graph: ind.graph,
        terminals,
        vertex_source,
        edge_source,
    })
}

/// Ĝ[V1] together with T1 = T|V1 plus the side-one anchors.
pub fn anchored_induced_subgraph(g: &Hypergraph, v1: &[VertexId], t: &TerminalSet) -> Result<Anchored> {
    let in1 = vertex_mask(g.num_vertices(), v1)?;
    if v1.is_empty() {
        return invalid("anchored subgraph of an empty vertex set");
    }
    t.validate(g.num_vertices())?;
    let sep = separate_by_mask(g, &in1)?;
    side_of(&sep, &in1, t, Side::One)
}

/// Output of [`reduce_to_degree_one`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOne {
    pub graph: Hypergraph,
    /// The copies; every one has degree one.
    pub terminals: TerminalSet,
    /// `(copy, source terminal)` pairs in ascending copy order.
    pub back_map: Vec<(VertexId, VertexId)>,
    /// The pendant edges joining copies to their sources.
    pub copy_edges: Vec<EdgeId>,
}

/// Gives every terminal `c` pendant degree-one copies and makes the copies
/// the terminal set. This is the duplicate-with-`c`-parallel-edges step
/// followed by splitting the duplicate into `c` degree-one vertices.
pub fn reduce_to_degree_one(g: &Hypergraph, t: &TerminalSet, c: usize) -> Result<DegreeOne> {
    if c == 0 {
        return invalid("threshold c must be at least 1");
    }
    t.validate(g.num_vertices())?;
    let n = g.num_vertices();
    let mut edges = g.edges().to_vec();
    let mut back_map = Vec::new();
    let mut copy_edges = Vec::new();
    let mut next = n;
    for s in t.iter() {
        for _ in 0..c {
            back_map.push((next, s));
            copy_edges.push(edges.len());
            edges.push(vec![s, next]);
            next += 1;
        }
    }
    Ok(DegreeOne {
        graph: Hypergraph::from_normalized(next, edges),
        terminals: TerminalSet::new(back_map.iter().map(|&(copy, _)| copy)),
        back_map,
        copy_edges,
    })
}
