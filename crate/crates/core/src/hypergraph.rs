use std::collections::BTreeSet;

use crate::error::{invalid, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A multi-hypergraph. Edges are sorted, duplicate-free vertex lists of
/// cardinality at least two; an edge's id is its position.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<VertexId>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and silently dropping edges
    /// that have fewer than two distinct vertices.
    pub fn new(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return invalid(format!("vertex {v} out of range for n = {n}"));
            }
            e.sort_unstable();
            e.dedup();
            if e.len() >= 2 {
                out.push(e);
            }
        }
        Ok(Self { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    // Callers guarantee sorted, in-range edges of size >= 2.
    pub(crate) fn from_normalized(n: usize, edges: Vec<Vec<VertexId>>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.len() >= 2 && e.windows(2).all(|w| w[0] < w[1]) && e[e.len() - 1] < n));
        Self { n, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> &[VertexId] {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn total_size(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Incident edge ids per vertex, in ascending edge order.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(id);
            }
        }
        inc
    }

    pub fn mask(&self, set: &[VertexId]) -> Result<Vec<bool>> {
        vertex_mask(self.n, set)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut index = vec![usize::MAX; self.n];
        let mut comps: Vec<Vec<VertexId>> = Vec::new();
        for v in 0..self.n {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        comps
    }

    pub fn is_connected_graph(&self) -> bool {
        self.components().len() <= 1
    }

    /// Appends an edge (normalized) and returns its id if it was kept.
    pub fn push_edge(&mut self, mut e: Vec<VertexId>) -> Result<Option<EdgeId>> {
        if let Some(&v) = e.iter().find(|&&v| v >= self.n) {
            return invalid(format!("vertex {v} out of range for n = {}", self.n));
        }
        e.sort_unstable();
        e.dedup();
        if e.len() < 2 {
            return Ok(None);
        }
        self.edges.push(e);
        Ok(Some(self.edges.len() - 1))
    }
}

pub(crate) fn vertex_mask(n: usize, set: &[VertexId]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &v in set {
        if v >= n {
            return invalid(format!("vertex {v} out of range for n = {n}"));
        }
        m[v] = true;
    }
    Ok(m)
}

pub(crate) fn mask_to_set(mask: &[bool]) -> Vec<VertexId> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &b)| b.then_some(v))
        .collect()
}

/// Terminal vertices plus the subset that are anchors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TerminalSet {
    terminals: BTreeSet<VertexId>,
    anchors: BTreeSet<VertexId>,
}

impl TerminalSet {
    pub fn new(terminals: impl IntoIterator<Item = VertexId>) -> Self {
        Self {
            terminals: terminals.into_iter().collect(),
            anchors: BTreeSet::new(),
        }
    }

    pub fn with_anchors(
        terminals: impl IntoIterator<Item = VertexId>,
        anchors: impl IntoIterator<Item = VertexId>,
    ) -> Self {
        let mut t = Self::new(terminals);
        for a in anchors {
            t.terminals.insert(a);
            t.anchors.insert(a);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.terminals.contains(&v)
    }

    pub fn is_anchor(&self, v: VertexId) -> bool {
        self.anchors.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.terminals.iter().copied()
    }

    pub fn anchors(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.anchors.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.terminals.iter().next_back() {
            Some(&v) if v >= n => invalid(format!("terminal {v} out of range for n = {n}")),
            _ => Ok(()),
        }
    }

    /// Image under a projection; anchor flags follow their vertices.
    pub fn project(&self, pi: &ProjectionMap) -> Self {
        Self {
            terminals: self.terminals.iter().map(|&v| pi.apply(v)).collect(),
            anchors: self.anchors.iter().map(|&v| pi.apply(v)).collect(),
        }
    }
}

/// A total surjection from `[0, len)` onto `[0, image_size)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMap {
    image_size: usize,
    map: Vec<VertexId>,
}

impl ProjectionMap {
    pub fn new(map: Vec<VertexId>, image_size: usize) -> Result<Self> {
        let mut hit = vec![false; image_size];
        for &w in &map {
            if w >= image_size {
                return invalid(format!("image {w} out of range for image size {image_size}"));
            }
            hit[w] = true;
        }
        if let Some(w) = hit.iter().position(|&h| !h) {
            return invalid(format!("projection is not surjective: {w} has no preimage"));
        }
        Ok(Self { image_size, map })
    }

    pub(crate) fn from_parts(map: Vec<VertexId>, image_size: usize) -> Self {
        debug_assert!(Self::new(map.clone(), image_size).is_ok());
        Self { image_size, map }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image_size: n,
            map: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn image_size(&self) -> usize {
        self.image_size
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.map
    }

    /// Sorted, deduplicated image of a vertex set.
    pub fn apply_set(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<_> = set.iter().map(|&v| self.map[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ProjectionMap) -> Result<ProjectionMap> {
        if next.domain_size() != self.image_size {
            return invalid(format!(
                "cannot compose: image size {} vs domain size {}",
                self.image_size,
                next.domain_size()
            ));
        }
        Ok(Self {
            image_size: next.image_size,
            map: self.map.iter().map(|&w| next.map[w]).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Dense labels numbered by first appearance in vertex order.
    pub(crate) fn dense_labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = self.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        (out, next)
    }
}

/// Element of a mixed vertex/edge collection, as used by [`restrict`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Item {
    Vertex(VertexId),
    Edge(Vec<VertexId>),
}

/// Keeps vertices inside `x` and intersects edges with `x`, dropping edges
/// that miss `x` entirely. Singleton intersections are kept here; they are
/// only dropped when a hypergraph is built from the result.
pub fn restrict(items: &[Item], n: usize, x: &[VertexId]) -> Result<Vec<Item>> {
    let mask = vertex_mask(n, x)?;
    let mut out = Vec::new();
    for item in items {
        match item {
            Item::Vertex(v) => {
                if *v >= n {
                    return invalid(format!("vertex {v} out of range for n = {n}"));
                }
                if mask[*v] {
                    out.push(Item::Vertex(*v));
                }
            }
            Item::Edge(e) => {
                let mut r = Vec::new();
                for &v in e {
                    if v >= n {
                        return invalid(format!("vertex {v} out of range for n = {n}"));
                    }
                    if mask[v] {
                        r.push(v);
                    }
                }
                r.sort_unstable();
                r.dedup();
                if !r.is_empty() {
                    out.push(Item::Edge(r));
                }
            }
        }
    }
    Ok(out)
}

/// Result of [`induced_subgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Hypergraph,
    /// `vertices[i]` is the original id of new vertex `i` (ascending).
    pub vertices: Vec<VertexId>,
    /// `edge_origin[j]` is the original id of new edge `j`.
    pub edge_origin: Vec<EdgeId>,
}

impl Induced {
    /// Map from original vertex ids to new ids, `None` outside the subset.
    pub fn local_ids(&self, n: usize) -> Vec<Option<VertexId>> {
        let mut out = vec![None; n];
        for (i, &v) in self.vertices.iter().enumerate() {
            out[v] = Some(i);
        }
        out
    }
}

/// G[X] relabeled densely in ascending vertex order.
pub fn induced_subgraph(g: &Hypergraph, x: &[VertexId]) -> Result<Induced> {
    let mask = g.mask(x)?;
    let vertices = mask_to_set(&mask);
    if vertices.is_empty() {
        return invalid("induced subgraph of an empty vertex set");
    }
    let mut local = vec![usize::MAX; g.n];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        let r: Vec<_> = e.iter().filter(|&&v| mask[v]).map(|&v| local[v]).collect();
        if r.len() >= 2 {
            edges.push(r);
            edge_origin.push(id);
        }
    }
    Ok(Induced {
        graph: Hypergraph::from_normalized(vertices.len(), edges),
        vertices,
        edge_origin,
    })
}

pub(crate) fn crosses(e: &[VertexId], mask: &[bool]) -> bool {
    let first = mask[e[0]];
    e.iter().any(|&v| mask[v] != first)
}

/// Ids of edges with endpoints on both sides of `(X, V∖X)`.
pub fn boundary(g: &Hypergraph, x: &[VertexId]) -> Result<Vec<EdgeId>> {
    let mask = g.mask(x)?;
    Ok(boundary_of_mask(g, &mask))
}

pub(crate) fn boundary_of_mask(g: &Hypergraph, mask: &[bool]) -> Vec<EdgeId> {
    (0..g.num_edges())
        .filter(|&id| crosses(&g.edges[id], mask))
        .collect()
}

/// Ids of edges meeting `X`.
pub fn incident_edges(g: &Hypergraph, x: &[VertexId]) -> Result<Vec<EdgeId>> {
    let mask = g.mask(x)?;
    Ok((0..g.num_edges())
        .filter(|&id| g.edges[id].iter().any(|&v| mask[v]))
        .collect())
}

/// Result of [`contract`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Hypergraph,
    pub projection: ProjectionMap,
    pub terminals: TerminalSet,
    /// `edge_origin[j]` is the id in the input graph of output edge `j`.
    pub edge_origin: Vec<EdgeId>,
}

/// Identifies the vertices of every edge in `contracted`, removes those
/// edges, and maps the rest through the projection. Images with fewer than
/// two vertices are dropped; parallel images are kept with multiplicity.
pub fn contract(g: &Hypergraph, contracted: &[EdgeId], t: &TerminalSet) -> Result<Contraction> {
    let mut gone = vec![false; g.num_edges()];
    let mut uf = UnionFind::new(g.n);
    for &id in contracted {
        if id >= g.num_edges() {
            return invalid(format!("edge {id} out of range for m = {}", g.num_edges()));
        }
        gone[id] = true;
        let e = &g.edges[id];
        for &v in &e[1..] {
            uf.union(e[0], v);
        }
    }
    let (labels, k) = uf.dense_labels();
    t.validate(g.n)?;
    Ok(map_edges(g, ProjectionMap::from_parts(labels, k), &gone, t))
}

/// Identifies vertices along an arbitrary projection and maps every edge
/// through it, dropping images with fewer than two vertices.
pub fn quotient(g: &Hypergraph, projection: &ProjectionMap, t: &TerminalSet) -> Result<Contraction> {
    if projection.domain_size() != g.n {
        return invalid(format!(
            "projection domain {} does not match n = {}",
            projection.domain_size(),
            g.n
        ));
    }
    t.validate(g.n)?;
    Ok(map_edges(g, projection.clone(), &vec![false; g.num_edges()], t))
}

fn map_edges(g: &Hypergraph, projection: ProjectionMap, gone: &[bool], t: &TerminalSet) -> Contraction {
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        if gone[id] {
            continue;
        }
        let img = projection.apply_set(e);
        if img.len() >= 2 {
            edges.push(img);
            edge_origin.push(id);
        }
    }
    Contraction {
        graph: Hypergraph::from_normalized(projection.image_size(), edges),
        terminals: t.project(&projection),
        projection,
        edge_origin,
    }
}
