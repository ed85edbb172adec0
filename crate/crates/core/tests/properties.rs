use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lct_core::classify::{
    cross_or_fence, cycle_posture, path_side, s_equivalent, BagContext, Posture, Separation, Side,
};
use lct_core::cycles::{
    enumerate_longest_cycles, join, longest_cycle_length_td, parts, Cycle, Joined, PathSegment, VertexCarrier,
};
use lct_core::decomposition::{
    check_separator_property, exact_treewidth, full_tree_decomposition, separator_instances, validate, BranchTarget,
};
use lct_core::generator::{
    canonical_form, generate_k_tree, generate_partial_k_tree, random_biconnected_graph, GenSpec,
};
use lct_core::graph::{parse_graph6, write_graph6, Graph, VertexSet};
use lct_core::transversal::{compute_lct, hits_all};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn graphs(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(density), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn partial_3_trees(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>(), 0.1f64..0.6)
        .prop_map(|(n, seed, p)| generate_partial_k_tree(&GenSpec::random(n, 3, seed).with_deletion(p)).unwrap())
}

fn biconnected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>(), 0.3f64..0.7)
        .prop_map(|(n, seed, p)| random_biconnected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed), 100_000).unwrap())
}

fn connected_without(g: &Graph, removed: Option<usize>) -> bool {
    let alive: Vec<usize> = (0..g.vertex_count()).filter(|&v| Some(v) != removed).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && Some(y) != removed && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

fn brute_biconnected(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 3 && connected_without(g, None) && (0..n).all(|v| connected_without(g, Some(v)))
}

/// Minimum over all elimination orders of the largest neighbourhood at elimination.
fn brute_treewidth(g: &Graph) -> usize {
    fn go(adj: &mut Vec<BTreeSet<usize>>, left: &mut Vec<usize>, width: usize, best: &mut usize) {
        if width >= *best {
            return;
        }
        if left.is_empty() {
            *best = width;
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let saved = adj.clone();
            for &a in &nbrs {
                adj[a].remove(&v);
                for &b in &nbrs {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
            go(adj, left, width.max(nbrs.len()), best);
            *adj = saved;
            left.insert(i, v);
        }
    }
    let n = g.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut left: Vec<usize> = (0..n).collect();
    let mut best = n;
    go(&mut adj, &mut left, 0, &mut best);
    best
}

fn normalize(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let i = (0..n).min_by_key(|&i| seq[i]).unwrap();
    let fwd: Vec<usize> = (0..n).map(|j| seq[(i + j) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|j| seq[(i + n - j) % n]).collect();
    fwd.min(bwd)
}

/// Every longest cycle, by trying all orderings of every vertex subset, largest first.
fn brute_longest_cycles(g: &Graph) -> (usize, BTreeSet<Vec<usize>>) {
    fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, g: &Graph, out: &mut BTreeSet<Vec<usize>>) {
        if rest.is_empty() {
            if g.has_edge(*cur.last().unwrap(), cur[0]) {
                out.insert(normalize(cur));
            }
            return;
        }
        for i in 0..rest.len() {
            if !g.has_edge(*cur.last().unwrap(), rest[i]) {
                continue;
            }
            let v = rest.remove(i);
            cur.push(v);
            perms(rest, cur, g, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let n = g.vertex_count();
    for k in (3..=n).rev() {
        let mut out = BTreeSet::new();
        for s in VertexSet::full(n).subsets_of_size(k) {
            let v = s.to_vec();
            let mut cur = vec![v[0]];
            let mut rest = v[1..].to_vec();
            perms(&mut rest, &mut cur, g, &mut out);
        }
        if !out.is_empty() {
            return (k, out);
        }
    }
    (0, BTreeSet::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trips(g in graphs(0, 62, 0.3)) {
        let text = write_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn biconnectivity_matches_vertex_deletion(g in graphs(0, 12, 0.35)) {
        prop_assert_eq!(g.is_biconnected(), brute_biconnected(&g));
    }

    #[test]
    fn removal_blocks_only_meet_through_the_separator(g in graphs(2, 12, 0.3), mask in any::<u64>()) {
        let s = VertexSet::from_mask(mask & VertexSet::full(g.vertex_count()).mask());
        let blocks = g.components_after_removal(s);
        for (i, a) in blocks.iter().enumerate() {
            prop_assert!(a.is_disjoint(s));
            for b in &blocks[i + 1..] {
                prop_assert!(a.is_disjoint(*b));
                for x in a.iter() {
                    prop_assert!(g.neighbors(x).is_disjoint(*b));
                }
            }
        }
        let covered = blocks.iter().fold(s, |acc, b| acc.union(*b));
        prop_assert_eq!(covered, g.vertices());
    }

    #[test]
    fn cycle_canonical_form_ignores_rotation_and_reflection(n in 3usize..10, shift in 0usize..10, flip: bool) {
        let base: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % 17).collect();
        let mut seq: Vec<usize> = (0..n).map(|i| base[(i + shift) % n]).collect();
        if flip {
            seq.reverse();
        }
        let a = Cycle::from_sequence(&base).unwrap();
        let b = Cycle::from_sequence(&seq).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(Cycle::from_sequence(a.vertices()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn treewidth_matches_every_elimination_order(g in graphs(1, 9, 0.4)) {
        let tw = exact_treewidth(&g).unwrap();
        prop_assert_eq!(tw.width, brute_treewidth(&g));
        prop_assert!(validate(&g, &tw.decomposition).is_empty());
        prop_assert_eq!(tw.decomposition.width(), tw.width);
    }

    #[test]
    fn enumeration_is_complete(g in graphs(3, 10, 0.45)) {
        let (length, expected) = brute_longest_cycles(&g);
        match enumerate_longest_cycles(&g) {
            Ok(found) => {
                prop_assert_eq!(found.length, length);
                let got: BTreeSet<Vec<usize>> = found.cycles.iter().map(|c| normalize(c.vertices())).collect();
                prop_assert_eq!(got.len(), found.cycles.len());
                prop_assert_eq!(got, expected);
            }
            Err(_) => prop_assert_eq!(length, 0),
        }
    }

    #[test]
    fn canonical_form_is_a_relabeling_invariant(g in graphs(1, 8, 0.4), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let (c, text) = canonical_form(&g);
        prop_assert_eq!(canonical_form(&g.relabel(&perm)).1, text.clone());
        prop_assert_eq!(canonical_form(&c).1, text);
        prop_assert_eq!(c.edge_count(), g.edge_count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_matches_enumeration(g in partial_3_trees(4, 12)) {
        let td = full_tree_decomposition(&g, 3).unwrap();
        let expected = enumerate_longest_cycles(&g).unwrap().length;
        prop_assert_eq!(longest_cycle_length_td(&g, &td).unwrap(), expected);
        let tw = exact_treewidth(&g).unwrap();
        prop_assert_eq!(longest_cycle_length_td(&g, &tw.decomposition).unwrap(), expected);
    }

    #[test]
    fn dp_matches_enumeration_on_arbitrary_graphs(g in graphs(3, 10, 0.4)) {
        let tw = exact_treewidth(&g).unwrap();
        let expected = enumerate_longest_cycles(&g).map(|s| s.length).unwrap_or(0);
        prop_assert_eq!(longest_cycle_length_td(&g, &tw.decomposition).unwrap(), expected);
    }

    #[test]
    fn k_trees_carry_full_decompositions(n in 4usize..16, k in 1usize..5, seed in any::<u64>()) {
        prop_assume!(n > k);
        let (g, td) = generate_k_tree(&GenSpec::random(n, k, seed)).unwrap();
        prop_assert!(validate(&g, &td).is_empty());
        prop_assert!(td.is_full_of_width(k));
        prop_assert_eq!(td.node_count(), n - k);
        prop_assert_eq!(generate_k_tree(&GenSpec::random(n, k, seed)).unwrap().0, g);
    }

    #[test]
    fn partial_k_trees_stay_within_width(n in 4usize..=10, k in 2usize..=4, seed in any::<u64>(), p in 0.0f64..0.7) {
        prop_assume!(n > k);
        let spec = GenSpec::random(n, k, seed).with_deletion(p);
        let g = generate_partial_k_tree(&spec).unwrap();
        prop_assert!(g.is_biconnected());
        prop_assert!(exact_treewidth(&g).unwrap().width <= k);
        let td = full_tree_decomposition(&g, k).unwrap();
        prop_assert!(validate(&g, &td).is_empty() && td.is_full_of_width(k));
        prop_assert_eq!(td.node_count(), n - k);
        prop_assert_eq!(generate_partial_k_tree(&spec).unwrap(), g);
    }

    #[test]
    fn separator_property_on_full_decompositions(g in partial_3_trees(5, 12)) {
        let td = full_tree_decomposition(&g, 3).unwrap();
        for (t, t2, u, v) in separator_instances(&td) {
            prop_assert!(check_separator_property(&g, &td, t, t2, u, v).unwrap());
        }
    }

    #[test]
    fn witness_is_a_minimum_transversal(g in biconnected(4, 9)) {
        let r = compute_lct(&g).unwrap();
        let sets: Vec<VertexSet> = r.family.cycles.iter().map(|c| c.vertex_set()).collect();
        prop_assert_eq!(r.witness.len(), r.lct);
        prop_assert!(hits_all(r.witness, &sets));
        for smaller in 0..r.lct.min(4) {
            for s in VertexSet::full(g.vertex_count()).subsets_of_size(smaller) {
                prop_assert!(!hits_all(s, &sets));
            }
        }
        // every pair of longest cycles of a 2-connected graph shares two vertices
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                prop_assert!(a.intersection(*b).len() >= 2);
            }
        }
    }

    #[test]
    fn posture_and_branch_invariants(g in partial_3_trees(5, 11)) {
        let td = full_tree_decomposition(&g, 3).unwrap();
        let longest = enumerate_longest_cycles(&g).unwrap();
        for t in 0..td.node_count() {
            let ctx = BagContext::new(&td, t).unwrap();
            let bag = ctx.bag;
            for c in &longest.cycles {
                let off = c.vertex_set().difference(bag);
                if cross_or_fence(&g, c, bag) == Separation::Fenced && !off.is_empty() {
                    let entries: BTreeSet<_> = off
                        .iter()
                        .map(|v| td.branch_of(t, BranchTarget::Vertex(v)).unwrap().entry)
                        .collect();
                    prop_assert_eq!(entries.len(), 1);
                }
            }
            for delta in bag.subsets_of_size(3) {
                let tctx = ctx.retarget(delta).unwrap();
                let inside = tctx.inside_set().unwrap();
                // components of G - V_t never straddle the inside boundary
                for comp in g.components_after_removal(bag) {
                    prop_assert!(comp.is_subset(inside) || comp.is_disjoint(inside));
                }
                for c in &longest.cycles {
                    if c.vertex_set().intersection(delta).len() < 2 {
                        continue;
                    }
                    let p = cycle_posture(&tctx, c).unwrap();
                    if p.tag == Posture::Jump {
                        prop_assert!(p.ell == 2 || p.ell == 3);
                    }
                    if c.vertex_set().is_subset(bag) {
                        continue;
                    }
                    let sides: Vec<Side> = parts(c, delta).unwrap().iter().map(|q| path_side(&tctx, q).unwrap()).collect();
                    let all_in = sides.iter().all(|&s| s == Side::Inside);
                    let all_out = sides.iter().all(|&s| s == Side::Outside);
                    prop_assert_eq!(p.tag == Posture::Inside, all_in);
                    prop_assert_eq!(p.tag == Posture::Outside, all_out);
                }
            }
        }
    }

    #[test]
    fn folding_parts_rebuilds_every_cycle(g in partial_3_trees(4, 10), mask in any::<u64>()) {
        let longest = enumerate_longest_cycles(&g).unwrap();
        for c in &longest.cycles {
            let s = VertexSet::from_mask(mask).intersection(c.vertex_set());
            if s.len() < 2 {
                continue;
            }
            let ps = parts(c, s).unwrap();
            prop_assert_eq!(ps.iter().map(PathSegment::len).sum::<usize>(), c.len());
            let mut acc = Joined::Path(ps[0].clone());
            for q in &ps[1..] {
                acc = match acc {
                    Joined::Path(p) => join(&p, q),
                    other => other,
                };
            }
            prop_assert_eq!(acc, Joined::Cycle(c.clone()));
        }
    }

    #[test]
    fn s_equivalence_is_an_equivalence(g in partial_3_trees(5, 10), mask in any::<u64>()) {
        let longest = enumerate_longest_cycles(&g).unwrap();
        let s = VertexSet::from_mask(mask).intersection(g.vertices());
        let cs = &longest.cycles;
        for a in cs {
            prop_assert!(s_equivalent(a, a, s));
            for b in cs {
                prop_assert_eq!(s_equivalent(a, b, s), s_equivalent(b, a, s));
                for c in cs {
                    if s_equivalent(a, b, s) && s_equivalent(b, c, s) {
                        prop_assert!(s_equivalent(a, c, s));
                    }
                }
            }
        }
    }
}
