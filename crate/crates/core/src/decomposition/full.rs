//! Turning an optimal decomposition into a full one of a prescribed width.
//!
//! Steps, all tie-broken by ascending ids:
//! 1. contract bags contained in a neighbour;
//! 2. grow a largest bag to `k + 1` vertices, borrowing from its neighbours;
//! 3. top-down, pad every bag with vertices of its parent;
//! 4. replace each edge whose bags share fewer than `k` vertices by a chain of
//!    bags that swap one vertex at a time.

use super::treewidth::{compress, contract_into, rebuild};
use super::{exact_treewidth, validate, DecompositionError, Node, TreeDecomposition};
use crate::graph::{Graph, VertexSet};

/// A full tree decomposition of width exactly `k`. Requires `tw(g) <= k` and
/// `n >= k + 1`.
pub fn full_tree_decomposition(g: &Graph, k: usize) -> Result<TreeDecomposition, DecompositionError> {
    let n = g.vertex_count();
    if n < k + 1 {
        return Err(DecompositionError::TooFewVertices { n, k });
    }
    let tw = exact_treewidth(g)?;
    if tw.width > k {
        return Err(DecompositionError::WidthExceeded { treewidth: tw.width, k });
    }
    let td = make_full(&tw.decomposition, k);
    let violations = validate(g, &td);
    if violations.is_empty() {
        Ok(td)
    } else {
        Err(DecompositionError::Invalid(violations))
    }
}

/// Fullness construction on an arbitrary valid decomposition of width at most `k`
/// whose bags cover at least `k + 1` vertices.
pub(crate) fn make_full(td: &TreeDecomposition, k: usize) -> TreeDecomposition {
    let td = compress(td);
    let m = td.node_count();
    let mut bags: Vec<VertexSet> = td.bags().to_vec();
    let mut adj: Vec<Vec<Node>> = (0..m).map(|t| td.neighbors(t).to_vec()).collect();
    let mut alive = vec![true; m];

    let root = (0..m).max_by_key(|&t| (bags[t].len(), std::cmp::Reverse(t))).expect("at least one bag");
    while bags[root].len() < k + 1 {
        let Some(&c) = adj[root].first() else {
            unreachable!("a lone bag smaller than k + 1 means fewer than k + 1 vertices");
        };
        let x = bags[c].difference(bags[root]).min().expect("neighbour bags are not contained");
        bags[root].insert(x);
        loop {
            let swallowed = adj[root].iter().copied().find(|&c| bags[c].is_subset(bags[root]));
            match swallowed {
                Some(c) => contract_into(&mut bags, &mut adj, &mut alive, c, root),
                None => break,
            }
        }
    }

    let td = rebuild(&bags, &adj, &alive);
    let root = alive[..root].iter().filter(|&&a| a).count();
    let mut bags: Vec<VertexSet> = td.bags().to_vec();
    let (parent, order) = td.rooted(root);
    for &t in &order {
        if let Some(p) = parent[t] {
            let mut spare = bags[p].difference(bags[t]).iter();
            while bags[t].len() < k + 1 {
                let x = spare.next().expect("parent has k + 1 vertices");
                bags[t].insert(x);
            }
        }
    }

    let mut edges = Vec::new();
    for &t in &order {
        let Some(p) = parent[t] else { continue };
        let outgoing = bags[p].difference(bags[t]).to_vec();
        let incoming = bags[t].difference(bags[p]).to_vec();
        debug_assert_eq!(outgoing.len(), incoming.len());
        let mut prev = p;
        let mut current = bags[p];
        // the last swap lands on bags[t] itself
        for i in 0..outgoing.len().saturating_sub(1) {
            current = current.without(outgoing[i]).with(incoming[i]);
            bags.push(current);
            let id = bags.len() - 1;
            edges.push((prev, id));
            prev = id;
        }
        edges.push((prev, t));
    }
    TreeDecomposition::new(bags, edges).expect("ids in range").claim_full()
}
