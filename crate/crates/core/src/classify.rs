//! Position of paths and cycles relative to a vertex set or to a triple of a bag.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{parts, Cycle, PathSegment, VertexCarrier};
use crate::decomposition::{BranchUnion, DecompositionError, Node, TreeDecomposition};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("no triple selected in the bag context")]
    NoTriple,
    #[error("path {0:?} does not meet the triple exactly at its two ends")]
    NotAPart(PathSegment),
    #[error("cycle meets the triple in {0} vertices; posture needs at least 2")]
    TooFewIntersections(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub count: usize,
    pub at: VertexSet,
}

pub fn k_intersect<X: VertexCarrier>(x: &X, s: VertexSet) -> Intersection {
    let at = x.vertex_set().intersection(s);
    Intersection { count: at.len(), at }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    Crosses,
    Fenced,
}

/// `Crosses` when `s` separates two vertices of `x` in `g`.
pub fn cross_or_fence<X: VertexCarrier>(g: &Graph, x: &X, s: VertexSet) -> Separation {
    if g.separates(s, x.vertex_set()) {
        Separation::Crosses
    } else {
        Separation::Fenced
    }
}

pub fn s_equivalent<X: VertexCarrier, Y: VertexCarrier>(x: &X, y: &Y, s: VertexSet) -> bool {
    x.vertex_set().intersection(s) == y.vertex_set().intersection(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Posture {
    Inside,
    Outside,
    Jump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePosture {
    pub tag: Posture,
    /// `|V(C) ∩ Δ|`.
    pub ell: usize,
    pub at: VertexSet,
}

/// A node of a full width-3 decomposition, optionally with a triple of its bag.
#[derive(Debug, Clone)]
pub struct BagContext<'a> {
    pub td: &'a TreeDecomposition,
    pub t: Node,
    pub bag: VertexSet,
    pub delta: Option<VertexSet>,
    union: Option<BranchUnion>,
    inside: VertexSet,
}

impl<'a> BagContext<'a> {
    pub fn new(td: &'a TreeDecomposition, t: Node) -> Result<Self, ClassifyError> {
        if t >= td.node_count() {
            return Err(DecompositionError::UnknownNode(t).into());
        }
        if !td.is_full_of_width(3) {
            return Err(DecompositionError::NotFull { expected: 3 }.into());
        }
        Ok(BagContext { td, t, bag: td.bag(t), delta: None, union: None, inside: VertexSet::new() })
    }

    pub fn with_delta(td: &'a TreeDecomposition, t: Node, delta: VertexSet) -> Result<Self, ClassifyError> {
        let mut ctx = BagContext::new(td, t)?;
        let union = td.branch_union(t, delta)?;
        ctx.inside = union.nodes.iter().fold(VertexSet::new(), |acc, &x| acc.union(td.bag(x)));
        ctx.delta = Some(delta);
        ctx.union = Some(union);
        Ok(ctx)
    }

    /// The same node with another triple.
    pub fn retarget(&self, delta: VertexSet) -> Result<BagContext<'a>, ClassifyError> {
        BagContext::with_delta(self.td, self.t, delta)
    }

    pub fn delta(&self) -> Result<VertexSet, ClassifyError> {
        self.delta.ok_or(ClassifyError::NoTriple)
    }

    pub fn branch_union(&self) -> Result<&BranchUnion, ClassifyError> {
        self.union.as_ref().ok_or(ClassifyError::NoTriple)
    }

    /// Vertices lying in some bag of the branch union of the triple. When that
    /// union is empty, no vertex is inside, not even those of the triple.
    pub fn inside_set(&self) -> Result<VertexSet, ClassifyError> {
        self.delta()?;
        Ok(self.inside)
    }
}

pub fn vertex_side(ctx: &BagContext<'_>, v: Vertex) -> Result<Side, ClassifyError> {
    Ok(if ctx.inside_set()?.contains(v) { Side::Inside } else { Side::Outside })
}

/// Side of a path whose ends are two vertices of the triple and whose interior
/// avoids it.
pub fn path_side(ctx: &BagContext<'_>, p: &PathSegment) -> Result<Side, ClassifyError> {
    let delta = ctx.delta()?;
    let (x, y) = p.endpoints();
    let ends_ok = x != y && delta.contains(x) && delta.contains(y);
    if !ends_ok || p.internal().iter().any(|&v| delta.contains(v)) {
        return Err(ClassifyError::NotAPart(p.clone()));
    }
    Ok(if p.vertex_set().is_subset(ctx.inside_set()?) { Side::Inside } else { Side::Outside })
}

/// Inside, outside or jumping the triple. A cycle within the bag counts as inside:
/// it lies in the empty branch.
pub fn cycle_posture(ctx: &BagContext<'_>, c: &Cycle) -> Result<CyclePosture, ClassifyError> {
    let delta = ctx.delta()?;
    let at = c.vertex_set().intersection(delta);
    let ell = at.len();
    if ell < 2 {
        return Err(ClassifyError::TooFewIntersections(ell));
    }
    if c.vertex_set().is_subset(ctx.bag) {
        return Ok(CyclePosture { tag: Posture::Inside, ell, at });
    }
    let mut inside = false;
    let mut outside = false;
    for part in parts(c, delta).expect("at least two intersections") {
        match path_side(ctx, &part)? {
            Side::Inside => inside = true,
            Side::Outside => outside = true,
        }
    }
    let tag = match (inside, outside) {
        (true, true) => Posture::Jump,
        (true, false) => Posture::Inside,
        _ => Posture::Outside,
    };
    Ok(CyclePosture { tag, ell, at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::full_tree_decomposition;
    use crate::fixtures::crossing_example;

    #[test]
    fn crossing_example_labels() {
        let f = crossing_example();
        let g = &f.graph;
        let s = f.set("abcd");
        let p1 = f.path("v1 a v5");
        let p2 = f.path("v3 c d b v4");
        let c1 = f.cycle("v1 b v2 d");
        let c2 = f.cycle("v3 v4 c a b");
        assert_eq!(k_intersect(&p1, s), Intersection { count: 1, at: f.set("a") });
        assert_eq!(cross_or_fence(g, &p1, s), Separation::Crosses);
        assert_eq!(k_intersect(&p2, s).at, f.set("bcd"));
        assert_eq!(cross_or_fence(g, &p2, s), Separation::Fenced);
        assert_eq!(k_intersect(&c1, s).count, 2);
        assert_eq!(cross_or_fence(g, &c1, s), Separation::Crosses);
        assert_eq!(k_intersect(&c2, s).count, 3);
        assert_eq!(cross_or_fence(g, &c2, s), Separation::Fenced);
        assert_eq!(cross_or_fence(g, &f.path("c d"), s), Separation::Fenced);
        assert_eq!(cross_or_fence(g, &f.cycle("a b d"), s), Separation::Fenced);
        assert!(s_equivalent(&p2, &f.path("v1 b c d v2"), s));
        assert!(s_equivalent(&c2, &f.cycle("v1 b c v5 a"), s));
        assert!(s_equivalent(&c2, &c2, s));
        assert!(!s_equivalent(&c1, &c2, s));
        let _ = full_tree_decomposition(g, 3).unwrap();
    }

    fn attach_tree() -> (Graph, TreeDecomposition) {
        // K4 on 0..4, then 4 on {0,1,2}, 5 on {1,2,3}, 6 on {0,1,4}
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (v, q) in [(4, [0, 1, 2]), (5, [1, 2, 3]), (6, [0, 1, 4])] {
            edges.extend(q.iter().map(|&u| (u, v)));
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let bags = [[0, 1, 2, 3], [0, 1, 2, 4], [1, 2, 3, 5], [0, 1, 4, 6]]
            .iter()
            .map(|b| VertexSet::from_iter(b.iter().copied()))
            .collect();
        let td = TreeDecomposition::new(bags, vec![(0, 1), (0, 2), (1, 3)]).unwrap().claim_full();
        (g, td)
    }

    #[test]
    fn sides_on_a_three_tree() {
        let (_, td) = attach_tree();
        let ctx = BagContext::with_delta(&td, 0, VertexSet::from_iter([0, 1, 2])).unwrap();
        assert_eq!(ctx.inside_set().unwrap(), VertexSet::from_iter([0, 1, 2, 4, 6]));
        assert_eq!(vertex_side(&ctx, 3).unwrap(), Side::Outside);
        assert_eq!(vertex_side(&ctx, 4).unwrap(), Side::Inside);
        assert_eq!(vertex_side(&ctx, 5).unwrap(), Side::Outside);
        // a triple of the bag with no branch behind it has nothing inside
        let bare = ctx.retarget(VertexSet::from_iter([0, 1, 3])).unwrap();
        assert!(bare.inside_set().unwrap().is_empty());
        assert_eq!(vertex_side(&bare, 0).unwrap(), Side::Outside);
    }

    #[test]
    fn postures_on_a_three_tree() {
        let (g, td) = attach_tree();
        let ctx = BagContext::with_delta(&td, 0, VertexSet::from_iter([0, 1, 2])).unwrap();
        let c = |s: &[Vertex]| Cycle::new(&g, s).unwrap();
        let inside = cycle_posture(&ctx, &c(&[0, 4, 1, 6])).unwrap();
        assert_eq!((inside.tag, inside.ell), (Posture::Inside, 2));
        let jump = cycle_posture(&ctx, &c(&[1, 4, 2, 5])).unwrap();
        assert_eq!((jump.tag, jump.ell), (Posture::Jump, 2));
        let outside = cycle_posture(&ctx, &c(&[1, 5, 2, 3])).unwrap();
        assert_eq!(outside.tag, Posture::Outside);
        let within = cycle_posture(&ctx, &c(&[0, 1, 3, 2])).unwrap();
        assert_eq!((within.tag, within.ell), (Posture::Inside, 3));
        assert_eq!(cycle_posture(&ctx, &c(&[1, 3, 5])), Err(ClassifyError::TooFewIntersections(1)));
    }

    #[test]
    fn path_side_preconditions() {
        let (g, td) = attach_tree();
        let ctx = BagContext::with_delta(&td, 0, VertexSet::from_iter([0, 1, 2])).unwrap();
        let p = |s: &[Vertex]| PathSegment::new(&g, s).unwrap();
        assert_eq!(path_side(&ctx, &p(&[0, 1])).unwrap(), Side::Inside);
        assert_eq!(path_side(&ctx, &p(&[0, 3, 1])).unwrap(), Side::Outside);
        assert!(matches!(path_side(&ctx, &p(&[0, 1, 2])), Err(ClassifyError::NotAPart(_))));
        assert!(matches!(path_side(&ctx, &p(&[0, 3])), Err(ClassifyError::NotAPart(_))));
        let no_delta = BagContext::new(&td, 0).unwrap();
        assert_eq!(vertex_side(&no_delta, 0), Err(ClassifyError::NoTriple));
    }
}
