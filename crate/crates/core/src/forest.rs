//! Directed forest on a full width-3 decomposition: an arc `t -> t2` whenever some
//! longest cycle fenced by `V_t`, meeting it at most three times, lives in the
//! branch at `t` entered through `t2`. Maximal directed paths either stop at a
//! node without out-arcs or end on an antipodal pair of arcs `t -> t2 -> t`.

use serde::{Deserialize, Serialize};

use crate::classify::{cross_or_fence, k_intersect, Separation};
use crate::cycles::{LongestCycleSet, VertexCarrier};
use crate::decomposition::{BranchTarget, Node, TreeDecomposition};
use crate::graph::Graph;
use crate::transversal::TransversalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Halt {
    /// The last node has no out-arc.
    Sink,
    /// The last arc is answered by the reverse arc.
    Antipodal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedPath {
    pub nodes: Vec<Node>,
    pub halt: Halt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedForest {
    /// Per node, the number of qualifying fenced cycles.
    pub fenced3: Vec<usize>,
    pub arcs: Vec<(Node, Node)>,
    /// One greedy maximal path from every node with an out-arc, always taking
    /// the smallest target.
    pub paths: Vec<DirectedPath>,
    pub antipodal: Vec<(Node, Node)>,
    pub lct: usize,
    pub length: usize,
    /// Whether the configuration the argument rules out is present:
    /// `lct > 1`, `L >= 5` and an antipodal pair.
    pub contradiction: bool,
}

pub fn directed_forest(
    g: &Graph,
    td: &TreeDecomposition,
    longest: &LongestCycleSet,
    lct: usize,
) -> Result<DirectedForest, TransversalError> {
    let m = td.node_count();
    let mut fenced3 = vec![0; m];
    let mut arcs = Vec::new();
    for (t, count) in fenced3.iter_mut().enumerate() {
        let bag = td.bag(t);
        for c in &longest.cycles {
            if k_intersect(c, bag).count > 3 || cross_or_fence(g, c, bag) != Separation::Fenced {
                continue;
            }
            *count += 1;
            // fenced, so everything off the bag sits in one branch
            let Some(v) = c.vertex_set().difference(bag).min() else { continue };
            let branch = td.branch_of(t, BranchTarget::Vertex(v))?;
            let entry = branch.entry.expect("vertex off the bag lies in a branch");
            arcs.push((t, entry));
        }
    }
    arcs.sort_unstable();
    arcs.dedup();

    let out = |t: Node| arcs.iter().filter(move |&&(a, _)| a == t).map(|&(_, b)| b);
    let has_arc = |a: Node, b: Node| arcs.binary_search(&(a, b)).is_ok();
    let antipodal: Vec<(Node, Node)> = arcs.iter().copied().filter(|&(a, b)| a < b && has_arc(b, a)).collect();

    let mut paths = Vec::new();
    for start in 0..m {
        if out(start).next().is_none() {
            continue;
        }
        let mut nodes = vec![start];
        let halt = loop {
            let cur = *nodes.last().unwrap();
            let prev = nodes.len().checked_sub(2).map(|i| nodes[i]);
            match out(cur).find(|&x| Some(x) != prev) {
                Some(next) => nodes.push(next),
                None if prev.is_some_and(|p| has_arc(cur, p)) => break Halt::Antipodal,
                None => break Halt::Sink,
            }
        };
        paths.push(DirectedPath { nodes, halt });
    }
    let contradiction = lct > 1 && longest.length >= 5 && !antipodal.is_empty();
    Ok(DirectedForest { fenced3, arcs, paths, antipodal, lct, length: longest.length, contradiction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::full_tree_decomposition;
    use crate::fixtures::crossing_example;
    use crate::transversal::compute_lct;

    #[test]
    fn crossing_example_has_no_contradiction() {
        let f = crossing_example();
        let td = full_tree_decomposition(&f.graph, 3).unwrap();
        let r = compute_lct(&f.graph).unwrap();
        let d = directed_forest(&f.graph, &td, &r.family, r.lct).unwrap();
        assert!(!d.contradiction);
        assert_eq!(d.fenced3.len(), td.node_count());
        for p in &d.paths {
            for w in p.nodes.windows(2) {
                assert!(td.are_adjacent(w[0], w[1]));
            }
        }
    }

    #[test]
    fn k4_has_no_arcs() {
        let k4 = Graph::complete(4).unwrap();
        let td = full_tree_decomposition(&k4, 3).unwrap();
        let r = compute_lct(&k4).unwrap();
        let d = directed_forest(&k4, &td, &r.family, r.lct).unwrap();
        assert!(d.arcs.is_empty() && d.paths.is_empty());
        assert_eq!(d.fenced3, vec![0]);
    }
}
