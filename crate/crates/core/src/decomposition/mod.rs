//! Tree decompositions: validation, branches at a node, and the separator
//! property of tree edges.

mod full;
mod treewidth;

pub use full::full_tree_decomposition;
pub use treewidth::{exact_treewidth, exact_treewidth_with_cap, Treewidth, DEFAULT_TREEWIDTH_CAP};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("tree edge ({0}, {1}) references a node outside 0..{2}")]
    NodeOutOfRange(Node, Node, usize),
    #[error("node {0} does not exist")]
    UnknownNode(Node),
    #[error("nodes {0} and {1} are not adjacent in the tree")]
    NotAdjacent(Node, Node),
    #[error("vertex {vertex} lies in the bag of node {node}; its branch is undefined")]
    VertexInBag { vertex: Vertex, node: Node },
    #[error("vertex {vertex} does not appear in branch Br_{node}({toward})")]
    VertexNotInBranch { vertex: Vertex, node: Node, toward: Node },
    #[error("vertex {0} appears in no bag")]
    VertexNotCovered(Vertex),
    #[error("decomposition is not full of width {expected}")]
    NotFull { expected: usize },
    #[error("{0} is not a triple inside the bag of node {1}")]
    BadTriple(VertexSet, Node),
    #[error("graph has {n} vertices, above the treewidth cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("treewidth {treewidth} exceeds the requested width {k}")]
    WidthExceeded { treewidth: usize, k: usize },
    #[error("a full decomposition of width {k} needs at least {} vertices, graph has {n}", k + 1)]
    TooFewVertices { n: usize, k: usize },
    #[error("invalid decomposition: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// One broken condition reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation {
    NotATree { nodes: usize, edges: usize, connected: bool },
    VertexOutOfRange { node: Node, vertex: Vertex },
    VertexUncovered { vertex: Vertex },
    EdgeUncovered { u: Vertex, v: Vertex },
    OccurrenceDisconnected { vertex: Vertex, nodes: Vec<Node> },
    BagSize { node: Node, size: usize, expected: usize },
    AdjacentIntersection { t: Node, t2: Node, size: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree { nodes, edges, connected } => {
                write!(f, "tree: {nodes} nodes, {edges} edges, connected={connected}")
            }
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag of node {node} holds unknown vertex {vertex}")
            }
            Violation::VertexUncovered { vertex } => write!(f, "vertex cover: vertex {vertex} missing"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge cover: edge ({u}, {v}) uncovered"),
            Violation::OccurrenceDisconnected { vertex, nodes } => {
                write!(f, "connectivity: nodes {nodes:?} holding vertex {vertex} are not connected")
            }
            Violation::BagSize { node, size, expected } => {
                write!(f, "fullness: bag of node {node} has {size} vertices, expected {expected}")
            }
            Violation::AdjacentIntersection { t, t2, size, expected } => {
                write!(f, "fullness: bags of {t} and {t2} share {size} vertices, expected {expected}")
            }
        }
    }
}

/// A tree of bags. `is_full` records a claim checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DecompositionRecord", try_from = "DecompositionRecord")]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(Node, Node)>,
    adj: Vec<Vec<Node>>,
    is_full: bool,
}

/// Serialized form: node list with bags, tree edge list, fullness claim.
#[derive(Serialize, Deserialize)]
struct DecompositionRecord {
    bags: Vec<VertexSet>,
    edges: Vec<(Node, Node)>,
    full: bool,
}

impl From<TreeDecomposition> for DecompositionRecord {
    fn from(td: TreeDecomposition) -> Self {
        DecompositionRecord { bags: td.bags, edges: td.edges, full: td.is_full }
    }
}

impl TryFrom<DecompositionRecord> for TreeDecomposition {
    type Error = DecompositionError;

    fn try_from(r: DecompositionRecord) -> Result<Self, Self::Error> {
        let td = TreeDecomposition::new(r.bags, r.edges)?;
        Ok(if r.full { td.claim_full() } else { td })
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(Node, Node)>) -> Result<Self, DecompositionError> {
        let m = bags.len();
        let mut adj = vec![Vec::new(); m];
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= m || b >= m {
                return Err(DecompositionError::NodeOutOfRange(a, b, m));
            }
            adj[a].push(b);
            adj[b].push(a);
            norm.push((a.min(b), a.max(b)));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        norm.sort_unstable();
        Ok(TreeDecomposition { bags, edges: norm, adj, is_full: false })
    }

    /// A decomposition with one bag holding every vertex of `g`.
    pub fn single_bag(g: &Graph) -> Self {
        let mut td = TreeDecomposition::new(vec![g.vertices()], Vec::new()).expect("no edges");
        td.is_full = true;
        td
    }

    /// Marks the decomposition as claiming fullness; `validate` then checks it.
    pub fn claim_full(mut self) -> Self {
        self.is_full = true;
        self
    }

    pub fn is_full(&self) -> bool {
        self.is_full
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, t: Node) -> VertexSet {
        self.bags[t]
    }

    pub fn tree_edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn neighbors(&self, t: Node) -> &[Node] {
        &self.adj[t]
    }

    pub fn are_adjacent(&self, a: Node, b: Node) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Largest bag size minus one; zero for a decomposition without bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Structural fullness: every bag has `k + 1` vertices and adjacent bags share `k`.
    pub fn is_full_of_width(&self, k: usize) -> bool {
        self.bags.iter().all(|b| b.len() == k + 1)
            && self.edges.iter().all(|&(a, b)| self.bags[a].intersection(self.bags[b]).len() == k)
    }

    fn check_node(&self, t: Node) -> Result<(), DecompositionError> {
        if t < self.bags.len() {
            Ok(())
        } else {
            Err(DecompositionError::UnknownNode(t))
        }
    }

    /// Nodes reachable from `start` in `T - removed`.
    fn component_without(&self, start: Node, removed: Node) -> Vec<Node> {
        let mut seen = vec![false; self.bags.len()];
        seen[removed] = true;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn branch_toward(&self, t: Node, entry: Node) -> Branch {
        let nodes = self.component_without(entry, t);
        let vertices = nodes.iter().fold(VertexSet::new(), |acc, &x| acc.union(self.bags[x])).difference(self.bags[t]);
        Branch { anchor: t, entry: Some(entry), nodes, vertices }
    }

    /// The branches of `T` at `t`, one per tree neighbour, in neighbour order.
    pub fn branches_at(&self, t: Node) -> Vec<Branch> {
        self.adj[t].iter().map(|&entry| self.branch_toward(t, entry)).collect()
    }

    /// `Br_t(x)`: the component of `T - t` holding node `x`, or holding a bag that
    /// contains vertex `x`.
    pub fn branch_of(&self, t: Node, target: BranchTarget) -> Result<Branch, DecompositionError> {
        self.check_node(t)?;
        match target {
            BranchTarget::Node(x) => {
                self.check_node(x)?;
                if x == t {
                    return Err(DecompositionError::UnknownNode(x));
                }
                self.branches_at(t)
                    .into_iter()
                    .find(|b| b.nodes.binary_search(&x).is_ok())
                    .ok_or(DecompositionError::UnknownNode(x))
            }
            BranchTarget::Vertex(v) => {
                if self.bags[t].contains(v) {
                    return Err(DecompositionError::VertexInBag { vertex: v, node: t });
                }
                self.branches_at(t)
                    .into_iter()
                    .find(|b| b.vertices.contains(v))
                    .ok_or(DecompositionError::VertexNotCovered(v))
            }
        }
    }

    fn require_full_width3(&self) -> Result<(), DecompositionError> {
        if self.is_full_of_width(3) {
            Ok(())
        } else {
            Err(DecompositionError::NotFull { expected: 3 })
        }
    }

    /// The union of the branches at `t` entered through a neighbour whose bag
    /// contains `delta`.
    pub fn branch_union(&self, t: Node, delta: VertexSet) -> Result<BranchUnion, DecompositionError> {
        self.check_node(t)?;
        self.require_full_width3()?;
        if delta.len() != 3 || !delta.is_subset(self.bags[t]) {
            return Err(DecompositionError::BadTriple(delta, t));
        }
        let branches: Vec<Branch> =
            self.adj[t].iter().filter(|&&x| delta.is_subset(self.bags[x])).map(|&x| self.branch_toward(t, x)).collect();
        let mut nodes: Vec<Node> = branches.iter().flat_map(|b| b.nodes.iter().copied()).collect();
        nodes.sort_unstable();
        let vertices = branches.iter().fold(VertexSet::new(), |acc, b| acc.union(b.vertices));
        Ok(BranchUnion { anchor: t, delta, branches, nodes, vertices })
    }

    /// Renumbers nothing; returns the tree as parent pointers from `root`
    /// together with a breadth-first order.
    pub(crate) fn rooted(&self, root: Node) -> (Vec<Option<Node>>, Vec<Node>) {
        let m = self.bags.len();
        let mut parent = vec![None; m];
        let mut seen = vec![false; m];
        let mut order = Vec::with_capacity(m);
        if m == 0 {
            return (parent, order);
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        (parent, order)
    }
}

/// What to locate with [`TreeDecomposition::branch_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchTarget {
    Node(Node),
    Vertex(Vertex),
}

/// A component of `T - anchor`. The empty branch (no nodes, no entry) stands for
/// paths and cycles lying entirely inside the anchor's bag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub anchor: Node,
    /// The neighbour of `anchor` inside the branch.
    pub entry: Option<Node>,
    pub nodes: Vec<Node>,
    /// Vertices appearing in the branch's bags, minus the anchor's bag.
    pub vertices: VertexSet,
}

impl Branch {
    pub fn empty(anchor: Node) -> Self {
        Branch { anchor, entry: None, nodes: Vec::new(), vertices: VertexSet::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchUnion {
    pub anchor: Node,
    pub delta: VertexSet,
    pub branches: Vec<Branch>,
    pub nodes: Vec<Node>,
    pub vertices: VertexSet,
}

impl BranchUnion {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains_branch(&self, branch: &Branch) -> bool {
        branch.entry.is_some_and(|e| self.branches.iter().any(|b| b.entry == Some(e)))
    }
}

/// Checks the three decomposition conditions, plus fullness when claimed.
/// An empty list means the decomposition is valid.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let m = td.node_count();

    let connected = m == 0 || td.component_without_none(0).len() == m;
    if m > 0 && (td.edges.len() != m - 1 || !connected) || m == 0 && !td.edges.is_empty() {
        out.push(Violation::NotATree { nodes: m, edges: td.edges.len(), connected });
    }

    let all = g.vertices();
    for (t, bag) in td.bags.iter().enumerate() {
        for v in bag.difference(all) {
            out.push(Violation::VertexOutOfRange { node: t, vertex: v });
        }
    }

    let covered = td.bags.iter().fold(VertexSet::new(), |acc, &b| acc.union(b));
    for v in all.difference(covered) {
        out.push(Violation::VertexUncovered { vertex: v });
    }

    for &(u, v) in g.edges() {
        let pair = VertexSet::from_iter([u, v]);
        if !td.bags.iter().any(|b| pair.is_subset(*b)) {
            out.push(Violation::EdgeUncovered { u, v });
        }
    }

    for v in 0..n {
        let holders: Vec<Node> = (0..m).filter(|&t| td.bags[t].contains(v)).collect();
        if holders.len() > 1 && !td.induces_connected(&holders) {
            out.push(Violation::OccurrenceDisconnected { vertex: v, nodes: holders });
        }
    }

    if td.is_full {
        let k = td.width();
        for (t, bag) in td.bags.iter().enumerate() {
            if bag.len() != k + 1 {
                out.push(Violation::BagSize { node: t, size: bag.len(), expected: k + 1 });
            }
        }
        for &(a, b) in &td.edges {
            let size = td.bags[a].intersection(td.bags[b]).len();
            if size != k {
                out.push(Violation::AdjacentIntersection { t: a, t2: b, size, expected: k });
            }
        }
    }
    out
}

impl TreeDecomposition {
    fn component_without_none(&self, start: Node) -> Vec<Node> {
        let mut seen = vec![false; self.bags.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }

    fn induces_connected(&self, nodes: &[Node]) -> bool {
        let mut inside = vec![false; self.bags.len()];
        for &x in nodes {
            inside[x] = true;
        }
        let mut seen = vec![false; self.bags.len()];
        seen[nodes[0]] = true;
        let mut stack = vec![nodes[0]];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in &self.adj[x] {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        count == nodes.len()
    }
}

/// For tree edge `t t2`, `u` outside `V_t` on the `t2` side and `v` outside `V_t2` on
/// the `t` side: whether `V_t ∩ V_t2` separates `u` and `v` in `g`.
pub fn check_separator_property(
    g: &Graph,
    td: &TreeDecomposition,
    t: Node,
    t2: Node,
    u: Vertex,
    v: Vertex,
) -> Result<bool, DecompositionError> {
    td.check_node(t)?;
    td.check_node(t2)?;
    if !td.are_adjacent(t, t2) {
        return Err(DecompositionError::NotAdjacent(t, t2));
    }
    if td.bag(t).contains(u) {
        return Err(DecompositionError::VertexInBag { vertex: u, node: t });
    }
    if td.bag(t2).contains(v) {
        return Err(DecompositionError::VertexInBag { vertex: v, node: t2 });
    }
    if !td.branch_toward(t, t2).vertices.contains(u) {
        return Err(DecompositionError::VertexNotInBranch { vertex: u, node: t, toward: t2 });
    }
    if !td.branch_toward(t2, t).vertices.contains(v) {
        return Err(DecompositionError::VertexNotInBranch { vertex: v, node: t2, toward: t });
    }
    let sep = td.bag(t).intersection(td.bag(t2));
    Ok(g.separates(sep, VertexSet::from_iter([u, v])))
}

/// Every `(t, t2, u, v)` meeting the preconditions of [`check_separator_property`],
/// over both orientations of every tree edge.
pub fn separator_instances(td: &TreeDecomposition) -> Vec<(Node, Node, Vertex, Vertex)> {
    let mut out = Vec::new();
    for &(a, b) in td.tree_edges() {
        for (t, t2) in [(a, b), (b, a)] {
            let far = td.branch_toward(t, t2).vertices;
            let near = td.branch_toward(t2, t).vertices;
            for u in far {
                for v in near {
                    out.push((t, t2, u, v));
                }
            }
        }
    }
    out
}
