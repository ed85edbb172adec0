//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are positional ids `0..n`. Neighborhoods are kept both as sorted
//! lists and as 64-bit masks so connectivity queries reduce to bit operations.

mod graph6;
mod vertex_set;

pub use graph6::{parse_graph6, write_graph6, Graph6Error, GRAPH6_MAX_VERTICES};
pub use vertex_set::VertexSet;

use std::fmt;

use thiserror::Error;

/// Hard upper bound on the vertex count of a [`Graph`].
pub const MAX_VERTICES: usize = 64;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(Vertex, Vertex),
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_masks(adj))
    }

    /// Builds a graph from symmetric adjacency masks. The caller guarantees symmetry
    /// and the absence of loops.
    pub(crate) fn from_masks(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, &mask) in adj.iter().enumerate() {
            debug_assert_eq!(mask >> u & 1, 0);
            for v in VertexSet::from_mask(mask & !low_mask(u + 1)) {
                edges.push((u, v));
            }
        }
        Graph { n, adj, edges }
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// The Petersen graph with the usual outer-5-cycle / inner-pentagram labeling.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("petersen edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        VertexSet::from_mask(self.adj[v])
    }

    pub(crate) fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// The subgraph with the same vertex set and one edge fewer.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Graph::from_masks(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph::from_masks(adj)
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reach(&self, start: Vertex, blocked: VertexSet) -> VertexSet {
        VertexSet::from_mask(self.reach_mask(1 << start, !blocked.mask()))
    }

    pub(crate) fn reach_mask(&self, seeds: u64, allowed: u64) -> u64 {
        let allowed = allowed & full_mask(self.n);
        let mut seen = seeds & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & allowed & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach_mask(1, u64::MAX) == full_mask(self.n)
    }

    /// Connected components of `G - s`, ordered by their smallest vertex.
    pub fn components_after_removal(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = full_mask(self.n) & !s.mask();
        let allowed = rest;
        let mut blocks = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let comp = self.reach_mask(seed, allowed);
            blocks.push(VertexSet::from_mask(comp));
            rest &= !comp;
        }
        blocks
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_after_removal(VertexSet::new())
    }

    /// Whether `s` separates at least two vertices of `x` (vertices of `x` inside `s`
    /// are ignored).
    pub fn separates(&self, s: VertexSet, x: VertexSet) -> bool {
        let outside = x.mask() & !s.mask() & full_mask(self.n);
        if outside.count_ones() < 2 {
            return false;
        }
        let seed = outside & outside.wrapping_neg();
        let comp = self.reach_mask(seed, !s.mask());
        outside & !comp != 0
    }

    /// Articulation vertices, found with one low-link depth-first traversal.
    pub fn articulation_points(&self) -> VertexSet {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = VertexSet::new();
        let mut time = 0;
        // (vertex, parent, neighbours still to visit)
        let mut stack: Vec<(Vertex, Option<Vertex>, u64)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, None, self.adj[root]));
            while let Some(top) = stack.last_mut() {
                let (v, parent, pending) = *top;
                if pending != 0 {
                    let w = pending.trailing_zeros() as usize;
                    top.2 &= pending - 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(v), self.adj[w]));
                    } else if Some(w) != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            cut.insert(p);
                        }
                    }
                }
            }
            if root_children > 1 {
                cut.insert(root);
            }
        }
        cut
    }

    /// Connected, at least three vertices, and no articulation vertex.
    pub fn is_biconnected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn low_mask(k: usize) -> u64 {
    full_mask(k)
}
