//! Exact treewidth by dynamic programming over vertex subsets.
//!
//! `tw[S]` is the best achievable maximum elimination degree when the vertices of
//! `S` are eliminated first, in some order. Eliminating `v` after `S` costs the
//! number of vertices outside `S ∪ {v}` reachable from `v` through `S`.

use super::{DecompositionError, Node, TreeDecomposition};
use crate::graph::{Graph, Vertex, VertexSet};

pub const DEFAULT_TREEWIDTH_CAP: usize = 24;

// 2^26 one-byte table entries; beyond this the table alone is too large.
const MAX_DP_VERTICES: usize = 26;

#[derive(Debug, Clone)]
pub struct Treewidth {
    pub width: usize,
    /// An optimal elimination order, first eliminated first.
    pub order: Vec<Vertex>,
    pub decomposition: TreeDecomposition,
}

pub fn exact_treewidth(g: &Graph) -> Result<Treewidth, DecompositionError> {
    exact_treewidth_with_cap(g, DEFAULT_TREEWIDTH_CAP)
}

pub fn exact_treewidth_with_cap(g: &Graph, cap: usize) -> Result<Treewidth, DecompositionError> {
    let n = g.vertex_count();
    if n > cap.min(MAX_DP_VERTICES) {
        return Err(DecompositionError::CapExceeded { n, cap: cap.min(MAX_DP_VERTICES) });
    }
    if n == 0 {
        let decomposition = TreeDecomposition::new(Vec::new(), Vec::new())?;
        return Ok(Treewidth { width: 0, order: Vec::new(), decomposition });
    }

    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    tw[0] = 0;
    for s in 1..size {
        let set = s as u64;
        let mut best = u8::MAX;
        for v in VertexSet::from_mask(set) {
            let prev = set & !(1 << v);
            let prior = tw[prev as usize];
            if prior >= best {
                continue;
            }
            let cost = elimination_cost(g, prev, v);
            best = best.min(prior.max(cost));
        }
        tw[s] = best;
    }

    let mut order_rev = Vec::with_capacity(n);
    let mut set = (size - 1) as u64;
    while set != 0 {
        let target = tw[set as usize];
        let v = VertexSet::from_mask(set)
            .iter()
            .find(|&v| {
                let prev = set & !(1 << v);
                tw[prev as usize].max(elimination_cost(g, prev, v)) == target
            })
            .expect("some vertex realises the optimum");
        order_rev.push(v);
        set &= !(1 << v);
    }
    order_rev.reverse();
    let order = order_rev;
    let decomposition = decomposition_from_order(g, &order);
    let width = tw[size - 1] as usize;
    debug_assert_eq!(decomposition.width(), width);
    Ok(Treewidth { width, order, decomposition })
}

/// Neighbours of the component of `v` in `G[eliminated ∪ {v}]`, outside that set.
fn elimination_cost(g: &Graph, eliminated: u64, v: Vertex) -> u8 {
    let inside = eliminated | 1 << v;
    let comp = g.reach_mask(1 << v, inside);
    let mut nb = 0u64;
    for x in VertexSet::from_mask(comp) {
        nb |= g.neighbor_mask(x);
    }
    (nb & !inside).count_ones() as u8
}

/// One bag `{v} ∪ N⁺(v)` per vertex, where `N⁺` is taken in the filled graph;
/// bags contained in a neighbour are then contracted away.
pub(crate) fn decomposition_from_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.vertex_count();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let mut remaining = g.vertices().mask();
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    for &v in order {
        remaining &= !(1 << v);
        let higher = adj[v] & remaining;
        for x in VertexSet::from_mask(higher) {
            adj[x] |= higher & !(1 << x);
        }
        bags.push(VertexSet::from_mask(higher | 1 << v));
        parent[v] = VertexSet::from_mask(higher).iter().min_by_key(|&x| pos[x]);
    }
    // node i holds the bag of order[i]; roots are joined to the last root
    let last_root = *order.iter().rev().find(|&&v| parent[v].is_none()).unwrap();
    let mut edges: Vec<(Node, Node)> = Vec::with_capacity(n.saturating_sub(1));
    for &v in order {
        match parent[v] {
            Some(p) => edges.push((pos[v], pos[p])),
            None if v != last_root => edges.push((pos[v], pos[last_root])),
            None => {}
        }
    }
    let td = TreeDecomposition::new(bags, edges).expect("node ids in range");
    compress(&td)
}

/// Contracts every tree edge whose one bag is contained in the other.
pub(crate) fn compress(td: &TreeDecomposition) -> TreeDecomposition {
    let m = td.node_count();
    let mut bags: Vec<VertexSet> = td.bags().to_vec();
    let mut adj: Vec<Vec<Node>> = (0..m).map(|t| td.neighbors(t).to_vec()).collect();
    let mut alive = vec![true; m];
    loop {
        let mut merged = false;
        'scan: for a in 0..m {
            if !alive[a] {
                continue;
            }
            for &b in &adj[a] {
                if bags[a].is_subset(bags[b]) {
                    contract_into(&mut bags, &mut adj, &mut alive, a, b);
                    merged = true;
                    break 'scan;
                }
            }
        }
        if !merged {
            break;
        }
    }
    rebuild(&bags, &adj, &alive)
}

/// Removes node `a`, attaching its other neighbours to `b`.
pub(crate) fn contract_into(bags: &mut [VertexSet], adj: &mut [Vec<Node>], alive: &mut [bool], a: Node, b: Node) {
    let others: Vec<Node> = adj[a].iter().copied().filter(|&x| x != b).collect();
    for &x in &others {
        adj[x].retain(|&y| y != a);
        adj[x].push(b);
        adj[x].sort_unstable();
        adj[b].push(x);
    }
    adj[b].retain(|&y| y != a);
    adj[b].sort_unstable();
    adj[a].clear();
    bags[b] = bags[b].union(bags[a]);
    alive[a] = false;
}

/// Compacts live nodes into a fresh decomposition, keeping their relative order.
pub(crate) fn rebuild(bags: &[VertexSet], adj: &[Vec<Node>], alive: &[bool]) -> TreeDecomposition {
    let mut index = vec![usize::MAX; bags.len()];
    let mut out_bags = Vec::new();
    for t in 0..bags.len() {
        if alive[t] {
            index[t] = out_bags.len();
            out_bags.push(bags[t]);
        }
    }
    let mut edges = Vec::new();
    for a in 0..bags.len() {
        if !alive[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b {
                edges.push((index[a], index[b]));
            }
        }
    }
    TreeDecomposition::new(out_bags, edges).expect("compacted ids in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate;

    #[test]
    fn small_known_values() {
        assert_eq!(exact_treewidth(&Graph::complete(4).unwrap()).unwrap().width, 3);
        assert_eq!(exact_treewidth(&Graph::cycle(5).unwrap()).unwrap().width, 2);
        assert_eq!(exact_treewidth(&Graph::path(6).unwrap()).unwrap().width, 1);
        assert_eq!(exact_treewidth(&Graph::empty(3).unwrap()).unwrap().width, 0);
        assert_eq!(exact_treewidth(&Graph::petersen()).unwrap().width, 4);
    }

    #[test]
    fn decompositions_validate_at_the_reported_width() {
        for g in [Graph::petersen(), Graph::cycle(7).unwrap(), Graph::complete(5).unwrap()] {
            let tw = exact_treewidth(&g).unwrap();
            assert!(validate(&g, &tw.decomposition).is_empty());
            assert_eq!(tw.decomposition.width(), tw.width);
            assert_eq!(tw.order.len(), g.vertex_count());
        }
    }

    #[test]
    fn disconnected_graph_gives_a_single_tree() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let tw = exact_treewidth(&g).unwrap();
        assert_eq!(tw.width, 2);
        assert!(validate(&g, &tw.decomposition).is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(10).unwrap();
        assert_eq!(exact_treewidth_with_cap(&g, 9).unwrap_err(), DecompositionError::CapExceeded { n: 10, cap: 9 });
    }
}
