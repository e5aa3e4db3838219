//! Exact (A,B)-mincuts through the split incidence digraph.
//!
//! Every vertex and every hyperedge becomes an in-node and an out-node. The
//! hyperedge arc `e_in -> e_out` has capacity 1; all other arcs have capacity
//! `c + 1`, so any cut of value at most `c` consists of hyperedge arcs only.

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::hypergraph::{mask_to_set, vertex_mask, EdgeId, Hypergraph, VertexId};

/// Thresholded cut value. `OverThreshold` is never the same as `Exact(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutValue {
    Exact(usize),
    OverThreshold,
}

impl CutValue {
    /// `min(value, c)`, the quantity a sparsifier must preserve.
    pub fn clamp(self, c: usize) -> usize {
        match self {
            CutValue::Exact(v) => v.min(c),
            CutValue::OverThreshold => c,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            CutValue::Exact(v) => Some(v),
            CutValue::OverThreshold => None,
        }
    }
}

/// One side of a bipartition with its boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub side: Vec<VertexId>,
    pub boundary_edges: Vec<EdgeId>,
    pub value: usize,
}

impl Cut {
    pub fn from_side(g: &Hypergraph, side: Vec<VertexId>) -> Result<Self> {
        let boundary_edges = crate::hypergraph::boundary(g, &side)?;
        Ok(Self {
            value: boundary_edges.len(),
            side,
            boundary_edges,
        })
    }
}

const NONE: u32 = u32::MAX;

/// Capacitated split digraph of a hypergraph.
#[derive(Clone, Debug)]
pub struct SplitDigraph {
    n: usize,
    m: usize,
    start: Vec<u32>,
    adj: Vec<u32>,
    head: Vec<u32>,
    cap: Vec<u32>,
}

/// What a split-digraph node stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Element {
    VertexIn(VertexId),
    VertexOut(VertexId),
    EdgeIn(EdgeId),
    EdgeOut(EdgeId),
}

impl SplitDigraph {
    pub fn new(g: &Hypergraph, c: usize) -> Self {
        let n = g.num_vertices();
        let m = g.num_edges();
        let big = u32::try_from(c + 1).unwrap_or(u32::MAX);
        let nodes = 2 * (n + m);
        let mut head = Vec::new();
        let mut cap = Vec::new();
        let mut tail = Vec::new();
        let mut add = |u: usize, w: usize, k: u32| {
            tail.push(u as u32);
            head.push(w as u32);
            cap.push(k);
            tail.push(w as u32);
            head.push(u as u32);
            cap.push(0);
        };
        for v in 0..n {
            add(2 * v, 2 * v + 1, big);
        }
        for (id, e) in g.edges().iter().enumerate() {
            let (ein, eout) = (2 * n + 2 * id, 2 * n + 2 * id + 1);
            add(ein, eout, 1);
            for &v in e {
                add(2 * v + 1, ein, big);
                add(eout, 2 * v, big);
            }
        }
        let mut start = vec![0u32; nodes + 1];
        for &t in &tail {
            start[t as usize + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut adj = vec![0u32; tail.len()];
        for (arc, &t) in tail.iter().enumerate() {
            adj[fill[t as usize] as usize] = arc as u32;
            fill[t as usize] += 1;
        }
        Self {
            n,
            m,
            start,
            adj,
            head,
            cap,
        }
    }

    pub fn num_nodes(&self) -> usize {
        2 * (self.n + self.m)
    }

    /// Number of forward (capacitated) arcs.
    pub fn num_arcs(&self) -> usize {
        self.head.len() / 2
    }

    pub fn element(&self, node: usize) -> Element {
        if node < 2 * self.n {
            if node.is_multiple_of(2) {
                Element::VertexIn(node / 2)
            } else {
                Element::VertexOut(node / 2)
            }
        } else {
            let e = (node - 2 * self.n) / 2;
            if node.is_multiple_of(2) {
                Element::EdgeIn(e)
            } else {
                Element::EdgeOut(e)
            }
        }
    }

    /// Forward arcs as `(from, to, capacity)`.
    pub fn arcs(&self) -> Vec<(usize, usize, u32)> {
        (0..self.head.len())
            .step_by(2)
            .map(|a| {
                (
                    self.head[a + 1] as usize,
                    self.head[a] as usize,
                    self.cap[a],
                )
            })
            .collect()
    }
}

/// Reusable max-flow state over one split digraph. Queries reset only the
/// arcs they touched, so many small local queries stay cheap on big graphs.
#[derive(Clone, Debug)]
pub struct FlowEngine {
    g: SplitDigraph,
    c: usize,
    res: Vec<u32>,
    touched: Vec<u32>,
    seen: Vec<u32>,
    sink: Vec<u32>,
    parent: Vec<u32>,
    stamp: u32,
    query: u32,
    queue: VecDeque<u32>,
}

/// Result of one flow query: value plus, when within threshold, the
/// A-minimal side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowOutcome {
    pub value: CutValue,
    pub minimal_side: Option<Vec<bool>>,
}

impl FlowEngine {
    pub fn new(g: &Hypergraph, c: usize) -> Self {
        let sd = SplitDigraph::new(g, c);
        let nodes = sd.num_nodes();
        Self {
            res: sd.cap.clone(),
            g: sd,
            c,
            touched: Vec::new(),
            seen: vec![0; nodes],
            sink: vec![0; nodes],
            parent: vec![NONE; nodes],
            stamp: 0,
            query: 0,
            queue: VecDeque::new(),
        }
    }

    pub fn threshold(&self) -> usize {
        self.c
    }

    fn next_stamp(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    fn reset(&mut self) {
        for &a in &self.touched {
            let a = a as usize;
            self.res[a] = self.g.cap[a];
            self.res[a ^ 1] = self.g.cap[a ^ 1];
        }
        self.touched.clear();
    }

    // BFS from all sources; on reaching a sink, pushes one unit back along
    // the parent arcs. With `find_sink = false` it only marks reachability.
    fn bfs(&mut self, sources: &[u32], find_sink: bool) -> bool {
        let stamp = self.next_stamp();
        self.queue.clear();
        for &s in sources {
            if self.seen[s as usize] != stamp {
                self.seen[s as usize] = stamp;
                self.parent[s as usize] = NONE;
                self.queue.push_back(s);
            }
        }
        while let Some(u) = self.queue.pop_front() {
            let u = u as usize;
            for i in self.g.start[u]..self.g.start[u + 1] {
                let arc = self.g.adj[i as usize] as usize;
                if self.res[arc] == 0 {
                    continue;
                }
                let w = self.g.head[arc] as usize;
                if self.seen[w] == stamp {
                    continue;
                }
                self.seen[w] = stamp;
                self.parent[w] = arc as u32;
                if find_sink && self.sink[w] == self.query {
                    let mut x = w;
                    while self.parent[x] != NONE {
                        let a = self.parent[x] as usize;
                        self.res[a] -= 1;
                        self.res[a ^ 1] += 1;
                        self.touched.push(a as u32);
                        x = self.g.head[a ^ 1] as usize;
                    }
                    return true;
                }
                self.queue.push_back(w as u32);
            }
        }
        false
    }

    fn check(&self, a: &[VertexId], b: &[VertexId]) -> Result<()> {
        if a.is_empty() || b.is_empty() {
            return invalid("mincut needs nonempty A and B");
        }
        let ma = vertex_mask(self.g.n, a)?;
        let mb = vertex_mask(self.g.n, b)?;
        if let Some(v) = (0..self.g.n).find(|&v| ma[v] && mb[v]) {
            return invalid(format!("A and B share vertex {v}"));
        }
        Ok(())
    }

    /// Flow from A to B, stopping after `limit` units.
    fn run(&mut self, a: &[VertexId], b: &[VertexId], limit: usize) -> usize {
        self.reset();
        self.query = self.query.wrapping_add(1);
        if self.query == 0 {
            self.sink.iter_mut().for_each(|s| *s = 0);
            self.query = 1;
        }
        for &v in b {
            self.sink[2 * v] = self.query;
        }
        let sources: Vec<u32> = a.iter().map(|&v| (2 * v + 1) as u32).collect();
        let mut flow = 0;
        while flow < limit && self.bfs(&sources, true) {
            flow += 1;
        }
        flow
    }

    /// Thresholded (A,B)-mincut value.
    pub fn mincut_value(&mut self, a: &[VertexId], b: &[VertexId]) -> Result<CutValue> {
        self.check(a, b)?;
        let c = self.c;
        let f = self.run(a, b, c + 1);
        Ok(if f > c {
            CutValue::OverThreshold
        } else {
            CutValue::Exact(f)
        })
    }

    /// Whether the (A,B)-mincut exceeds `k`, for `k <= c`. Stops after `k+1` units.
    pub fn exceeds(&mut self, a: &[VertexId], b: &[VertexId], k: usize) -> bool {
        self.run(a, b, k + 1) > k
    }

    /// The A-minimal (A,B)-mincut when its value is at most `c`.
    pub fn a_minimal(&mut self, a: &[VertexId], b: &[VertexId]) -> Result<FlowOutcome> {
        self.check(a, b)?;
        let c = self.c;
        let f = self.run(a, b, c + 1);
        if f > c {
            return Ok(FlowOutcome {
                value: CutValue::OverThreshold,
                minimal_side: None,
            });
        }
        let sources: Vec<u32> = a.iter().map(|&v| (2 * v + 1) as u32).collect();
        self.bfs(&sources, false);
        let stamp = self.stamp;
        let side = (0..self.g.n).map(|v| self.seen[2 * v + 1] == stamp).collect();
        Ok(FlowOutcome {
            value: CutValue::Exact(f),
            minimal_side: Some(side),
        })
    }
}

/// Thresholded (A,B)-mincut value of `g`.
pub fn mincut_value(g: &Hypergraph, a: &[VertexId], b: &[VertexId], c: usize) -> Result<CutValue> {
    FlowEngine::new(g, c).mincut_value(a, b)
}

/// The unique A-minimal (A,B)-mincut, or `None` if the mincut exceeds `c`.
pub fn a_minimal_mincut(
    g: &Hypergraph,
    a: &[VertexId],
    b: &[VertexId],
    c: usize,
) -> Result<Option<Cut>> {
    let out = FlowEngine::new(g, c).a_minimal(a, b)?;
    Ok(match out.minimal_side {
        None => None,
        Some(mask) => {
            let cut = Cut::from_side(g, mask_to_set(&mask))?;
            debug_assert_eq!(CutValue::Exact(cut.value), out.value);
            Some(cut)
        }
    })
}

/// Whether G[X] is connected.
pub fn is_connected(g: &Hypergraph, x: &[VertexId]) -> Result<bool> {
    let mask = vertex_mask(g.num_vertices(), x)?;
    let Some(&start) = x.first() else {
        return invalid("connectivity of an empty vertex set");
    };
    Ok(is_connected_mask(g, &g.incidence(), &mask, start))
}

pub(crate) fn is_connected_mask(
    g: &Hypergraph,
    inc: &[Vec<EdgeId>],
    mask: &[bool],
    start: VertexId,
) -> bool {
    let total = mask.iter().filter(|&&b| b).count();
    let mut seen = vec![false; g.num_vertices()];
    let mut edge_seen = vec![false; g.num_edges()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &e in &inc[u] {
            if edge_seen[e] {
                continue;
            }
            edge_seen[e] = true;
            for &w in g.edge(e) {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
    }
    count == total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n - 1).map(|i| vec![i, i + 1]).collect()).unwrap()
    }

    #[test]
    fn split_digraph_shape() {
        let g = Hypergraph::new(3, vec![vec![0, 1, 2], vec![1, 2]]).unwrap();
        let sd = SplitDigraph::new(&g, 2);
        assert_eq!(sd.num_nodes(), 2 * (3 + 2));
        // one arc per vertex, one per edge, two per incidence
        assert_eq!(sd.num_arcs(), 3 + 2 + 2 * 5);
        let arcs = sd.arcs();
        let unit: Vec<_> = arcs.iter().filter(|a| a.2 == 1).collect();
        assert_eq!(unit.len(), 2);
        for &(u, w, _) in unit {
            assert!(matches!(sd.element(u), Element::EdgeIn(_)));
            assert!(matches!(sd.element(w), Element::EdgeOut(_)));
        }
        assert!(arcs.iter().filter(|a| a.2 != 1).all(|a| a.2 == 3));
    }

    #[test]
    fn mincut_examples() {
        assert_eq!(mincut_value(&path(3), &[0], &[2], 3).unwrap(), CutValue::Exact(1));
        let par = Hypergraph::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(mincut_value(&par, &[0], &[1], 3).unwrap(), CutValue::Exact(2));
        assert_eq!(mincut_value(&par, &[0], &[1], 1).unwrap(), CutValue::OverThreshold);
        let g = Hypergraph::new(3, vec![vec![0, 1, 2], vec![1, 2]]).unwrap();
        assert_eq!(mincut_value(&g, &[0], &[2], 3).unwrap(), CutValue::Exact(1));
        let dis = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(mincut_value(&dis, &[0], &[3], 1).unwrap(), CutValue::Exact(0));
    }

    #[test]
    fn mincut_errors() {
        let p = path(3);
        assert!(mincut_value(&p, &[0], &[0, 2], 1).is_err());
        assert!(mincut_value(&p, &[], &[2], 1).is_err());
        assert!(mincut_value(&p, &[0], &[7], 1).is_err());
    }

    #[test]
    fn a_minimal_examples() {
        let x = a_minimal_mincut(&path(4), &[0], &[3], 2).unwrap().unwrap();
        assert_eq!(x.side, vec![0]);
        assert_eq!(x.value, 1);
        let e = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(a_minimal_mincut(&e, &[0], &[1], 1).unwrap().unwrap().side, vec![0]);
        let par = Hypergraph::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(a_minimal_mincut(&par, &[0], &[1], 1).unwrap().is_none());
        // source side grows past a thick middle
        let g = Hypergraph::new(4, vec![vec![0, 1], vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let x = a_minimal_mincut(&g, &[0], &[3], 3).unwrap().unwrap();
        assert_eq!(x.side, vec![0, 1]);
        assert_eq!(x.boundary_edges, vec![2]);
    }

    #[test]
    fn connectivity_examples() {
        let p = path(3);
        assert!(is_connected(&p, &[1]).unwrap());
        assert!(!is_connected(&p, &[0, 2]).unwrap());
        let g = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(is_connected(&g, &[0, 2]).unwrap());
        assert!(is_connected(&g, &[]).is_err());
    }

    #[test]
    fn engine_reuse_is_stateless() {
        let g = Hypergraph::new(
            5,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4], vec![1, 3]],
        )
        .unwrap();
        let mut eng = FlowEngine::new(&g, 3);
        for _ in 0..3 {
            assert_eq!(eng.mincut_value(&[0], &[2]).unwrap(), CutValue::Exact(2));
            assert_eq!(eng.mincut_value(&[1], &[3]).unwrap(), CutValue::Exact(3));
            assert!(!eng.exceeds(&[0], &[2], 2));
            assert!(eng.exceeds(&[1], &[3], 2));
        }
    }
}
