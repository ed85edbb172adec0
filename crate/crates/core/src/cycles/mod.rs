//! Cycles, path segments, and the part / tail / concatenation algebra.

mod enumerate;
mod td_dp;

pub use enumerate::{
    enumerate_longest_cycles, enumerate_longest_cycles_with, longest_cycle_length, EnumerationLimits, LongestCycleSet,
    DEFAULT_ENUMERATION_CAP,
};
pub use td_dp::longest_cycle_length_td;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::Violation;
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("({0}, {1}) is not an edge")]
    MissingEdge(Vertex, Vertex),
    #[error("empty path")]
    EmptyPath,
    #[error("cycle meets the set in {0} vertices; parts need at least 2")]
    TooFewIntersections(usize),
    #[error("vertex {0} is not on the path")]
    NotOnPath(Vertex),
    #[error("graph has {n} vertices, above the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("enumeration budget of {0} search steps exhausted; no partial result is returned")]
    BudgetExhausted(u64),
    #[error("invalid decomposition ({} violations)", .0.len())]
    InvalidDecomposition(Vec<Violation>),
}

/// Anything with a vertex set: cycles and path segments.
pub trait VertexCarrier {
    fn vertex_set(&self) -> VertexSet;
}

/// A cycle stored canonically: it starts at its smallest vertex, and the second
/// entry is the smaller of that vertex's two cycle neighbours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vertex>", try_from = "Vec<Vertex>")]
pub struct Cycle {
    vertices: Vec<Vertex>,
    #[serde(skip)]
    set: VertexSet,
}

impl Cycle {
    /// Validates `seq` as a cycle of `g` and canonicalises it.
    pub fn new(g: &Graph, seq: &[Vertex]) -> Result<Self, CycleError> {
        let cycle = Cycle::from_sequence(seq)?;
        let n = cycle.len();
        for i in 0..n {
            let (u, v) = (cycle.vertices[i], cycle.vertices[(i + 1) % n]);
            if u >= g.vertex_count() {
                return Err(CycleError::UnknownVertex(u));
            }
            if !g.has_edge(u, v) {
                return Err(CycleError::MissingEdge(u, v));
            }
        }
        Ok(cycle)
    }

    /// Canonicalises a sequence without consulting a graph.
    pub fn from_sequence(seq: &[Vertex]) -> Result<Self, CycleError> {
        if seq.len() < 3 {
            return Err(CycleError::TooShort(seq.len()));
        }
        let mut set = VertexSet::new();
        for &v in seq {
            if v >= 64 {
                return Err(CycleError::UnknownVertex(v));
            }
            if !set.insert(v) {
                return Err(CycleError::RepeatedVertex(v));
            }
        }
        Ok(Cycle { vertices: canonical(seq), set })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.set.contains(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| ordered(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

impl VertexCarrier for Cycle {
    fn vertex_set(&self) -> VertexSet {
        self.set
    }
}

impl From<Cycle> for Vec<Vertex> {
    fn from(c: Cycle) -> Self {
        c.vertices
    }
}

impl TryFrom<Vec<Vertex>> for Cycle {
    type Error = CycleError;

    fn try_from(seq: Vec<Vertex>) -> Result<Self, CycleError> {
        Cycle::from_sequence(&seq)
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.vertices)
    }
}

fn canonical(seq: &[Vertex]) -> Vec<Vertex> {
    let n = seq.len();
    let start = (0..n).min_by_key(|&i| seq[i]).unwrap();
    let next = seq[(start + 1) % n];
    let prev = seq[(start + n - 1) % n];
    if next < prev {
        (0..n).map(|i| seq[(start + i) % n]).collect()
    } else {
        (0..n).map(|i| seq[(start + n - i) % n]).collect()
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// A path given by its vertex sequence; a single vertex is a path of length 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vertex>", try_from = "Vec<Vertex>")]
pub struct PathSegment {
    vertices: Vec<Vertex>,
    #[serde(skip)]
    set: VertexSet,
}

impl PathSegment {
    /// Validates `seq` as a path of `g`.
    pub fn new(g: &Graph, seq: &[Vertex]) -> Result<Self, CycleError> {
        let p = PathSegment::from_sequence(seq)?;
        for &v in seq {
            if v >= g.vertex_count() {
                return Err(CycleError::UnknownVertex(v));
            }
        }
        for w in seq.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(CycleError::MissingEdge(w[0], w[1]));
            }
        }
        Ok(p)
    }

    /// Checks only that vertices are distinct.
    pub fn from_sequence(seq: &[Vertex]) -> Result<Self, CycleError> {
        if seq.is_empty() {
            return Err(CycleError::EmptyPath);
        }
        let mut set = VertexSet::new();
        for &v in seq {
            if v >= 64 {
                return Err(CycleError::UnknownVertex(v));
            }
            if !set.insert(v) {
                return Err(CycleError::RepeatedVertex(v));
            }
        }
        Ok(PathSegment { vertices: seq.to_vec(), set })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn internal(&self) -> &[Vertex] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn reversed(&self) -> PathSegment {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PathSegment { vertices, set: self.set }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| ordered(w[0], w[1]))
    }

    /// Same vertex sequence up to reversal.
    pub fn same_path(&self, other: &PathSegment) -> bool {
        self.vertices == other.vertices || self.vertices.iter().eq(other.vertices.iter().rev())
    }
}

impl VertexCarrier for PathSegment {
    fn vertex_set(&self) -> VertexSet {
        self.set
    }
}

impl From<PathSegment> for Vec<Vertex> {
    fn from(p: PathSegment) -> Self {
        p.vertices
    }
}

impl TryFrom<Vec<Vertex>> for PathSegment {
    type Error = CycleError;

    fn try_from(seq: Vec<Vertex>) -> Result<Self, CycleError> {
        PathSegment::from_sequence(&seq)
    }
}

impl fmt::Debug for PathSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path{:?}", self.vertices)
    }
}

/// The segments of `c` between consecutive vertices of `s`, in cycle order,
/// starting from the first vertex of `s` along the canonical sequence.
pub fn parts(c: &Cycle, s: VertexSet) -> Result<Vec<PathSegment>, CycleError> {
    let seq = c.vertices();
    let n = seq.len();
    let marks: Vec<usize> = (0..n).filter(|&i| s.contains(seq[i])).collect();
    if marks.len() < 2 {
        return Err(CycleError::TooFewIntersections(marks.len()));
    }
    let mut out = Vec::with_capacity(marks.len());
    for (j, &from) in marks.iter().enumerate() {
        let to = marks[(j + 1) % marks.len()];
        let steps = (to + n - from) % n;
        let verts: Vec<Vertex> = (0..=steps).map(|i| seq[(from + i) % n]).collect();
        out.push(PathSegment::from_sequence(&verts).expect("sub-walk of a cycle is a path"));
    }
    Ok(out)
}

/// The two `v`-tails of `p`: prefix ending at `v` and suffix starting at `v`.
pub fn tails(p: &PathSegment, v: Vertex) -> Result<(PathSegment, PathSegment), CycleError> {
    let i = p.vertices().iter().position(|&x| x == v).ok_or(CycleError::NotOnPath(v))?;
    let head = PathSegment::from_sequence(&p.vertices()[..=i]).expect("prefix");
    let tail = PathSegment::from_sequence(&p.vertices()[i..]).expect("suffix");
    Ok((head, tail))
}

/// Result of concatenating two paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Joined {
    Path(PathSegment),
    Cycle(Cycle),
    Undefined,
}

/// `p · q`: the union of the two paths when it is itself a path or a cycle.
/// A resulting path is read starting from `p`'s first vertex when that is an end.
pub fn join(p: &PathSegment, q: &PathSegment) -> Joined {
    let vertices = p.vertex_set().union(q.vertex_set());
    let edges: BTreeSet<(Vertex, Vertex)> = p.edges().chain(q.edges()).collect();
    let nv = vertices.len();
    let mut nbrs = [0u64; 64];
    for &(u, v) in &edges {
        nbrs[u] |= 1 << v;
        nbrs[v] |= 1 << u;
    }
    if vertices.iter().any(|v| nbrs[v].count_ones() > 2) {
        return Joined::Undefined;
    }
    let start = vertices.min().expect("paths are non-empty");
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = nbrs[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    if seen != vertices.mask() {
        return Joined::Undefined;
    }
    let walk = |from: Vertex| -> Vec<Vertex> {
        let mut out = vec![from];
        let mut prev = usize::MAX;
        let mut cur = from;
        loop {
            let next = VertexSet::from_mask(nbrs[cur]).iter().find(|&x| x != prev && !out.contains(&x));
            match next {
                Some(x) => {
                    out.push(x);
                    prev = cur;
                    cur = x;
                }
                None => return out,
            }
        }
    };
    if edges.len() + 1 == nv {
        let first = p.vertices()[0];
        let from = if nbrs[first].count_ones() <= 1 {
            first
        } else {
            vertices.iter().find(|&v| nbrs[v].count_ones() == 1).expect("paths have ends")
        };
        Joined::Path(PathSegment::from_sequence(&walk(from)).expect("walk visits distinct vertices"))
    } else if edges.len() == nv && nv >= 3 {
        Joined::Cycle(Cycle::from_sequence(&walk(start)).expect("walk around a cycle"))
    } else {
        Joined::Undefined
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(v: &[Vertex]) -> PathSegment {
        PathSegment::from_sequence(v).unwrap()
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let a = Cycle::from_sequence(&[4, 2, 7, 1, 9]).unwrap();
        assert_eq!(a.vertices(), &[1, 7, 2, 4, 9]);
        let b = Cycle::from_sequence(&[9, 1, 7, 2, 4]).unwrap();
        let c = Cycle::from_sequence(&[2, 7, 1, 9, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(Cycle::from_sequence(a.vertices()).unwrap(), a);
    }

    #[test]
    fn cycle_validation() {
        let k4 = Graph::complete(4).unwrap();
        assert!(Cycle::new(&k4, &[0, 1, 2]).is_ok());
        assert_eq!(Cycle::new(&k4, &[0, 1]), Err(CycleError::TooShort(2)));
        assert_eq!(Cycle::new(&k4, &[0, 1, 0]), Err(CycleError::RepeatedVertex(0)));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(Cycle::new(&c5, &[0, 1, 3]), Err(CycleError::MissingEdge(1, 3)));
    }

    #[test]
    fn parts_of_triangle_and_hexagon() {
        let tri = Cycle::from_sequence(&[0, 1, 2]).unwrap();
        let p = parts(&tri, VertexSet::from_iter([0, 1, 2])).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|s| s.len() == 1));

        let hex = Cycle::from_sequence(&[0, 1, 2, 3, 4, 5]).unwrap();
        let p = parts(&hex, VertexSet::from_iter([0, 3])).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|s| s.len() == 3));
        assert_eq!(parts(&hex, VertexSet::from_iter([2])), Err(CycleError::TooFewIntersections(1)));
    }

    #[test]
    fn tails_split_at_a_vertex() {
        let p = seg(&[0, 1, 2]);
        let (a, b) = tails(&p, 1).unwrap();
        assert_eq!((a.vertices(), b.vertices()), (&[0, 1][..], &[1, 2][..]));
        let (a, b) = tails(&p, 0).unwrap();
        assert_eq!(a.len(), 0);
        assert_eq!(b, p);
        assert_eq!(tails(&p, 5), Err(CycleError::NotOnPath(5)));
    }

    #[test]
    fn join_cases() {
        // two internally disjoint 0-4 paths of lengths 2 and 3
        let p = seg(&[0, 1, 4]);
        let q = seg(&[4, 2, 3, 0]);
        assert_eq!(join(&p, &q), Joined::Cycle(Cycle::from_sequence(&[0, 1, 4, 2, 3]).unwrap()));
        // sharing internal vertex 1
        assert_eq!(join(&seg(&[0, 1, 2]), &seg(&[3, 1, 4])), Joined::Undefined);
        assert_eq!(join(&seg(&[2, 0]), &seg(&[0, 1])), Joined::Path(seg(&[2, 0, 1])));
        // disconnected union
        assert_eq!(join(&seg(&[0, 1]), &seg(&[2, 3])), Joined::Undefined);
        // overlapping paths that stay a path
        assert_eq!(join(&seg(&[0, 1, 2]), &seg(&[1, 2, 3])), Joined::Path(seg(&[0, 1, 2, 3])));
    }

    #[test]
    fn folding_parts_rebuilds_the_cycle() {
        let c = Cycle::from_sequence(&[0, 5, 3, 8, 2, 6, 1]).unwrap();
        for s in [VertexSet::from_iter([0, 8]), VertexSet::from_iter([5, 2, 1]), c.vertex_set()] {
            let ps = parts(&c, s).unwrap();
            let mut acc = Joined::Path(ps[0].clone());
            for p in &ps[1..] {
                acc = match acc {
                    Joined::Path(a) => join(&a, p),
                    other => panic!("premature {other:?}"),
                };
            }
            assert_eq!(acc, Joined::Cycle(c.clone()));
        }
    }
}
