//! Canonical labelling for small graphs: colour refinement, then every ordering
//! within the colour classes; the lexicographically largest graph6 string wins.

use crate::graph::{write_graph6, Graph, Vertex};

/// The canonically relabelled graph and its graph6 string. Two graphs are
/// isomorphic exactly when their strings agree. Cost grows with the product of
/// factorials of the colour class sizes, so this is meant for small graphs.
pub fn canonical_form(g: &Graph) -> (Graph, String) {
    let n = g.vertex_count();
    let colours = refine(g);
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let max = colours.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..max {
        let cell: Vec<Vertex> = (0..n).filter(|&v| colours[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let mut best: Option<(String, Graph)> = None;
    let mut order = Vec::with_capacity(n);
    search(g, &mut cells, 0, &mut order, &mut best);
    let (s, h) = best.unwrap_or_else(|| (write_graph6(g).expect("small"), g.clone()));
    (h, s)
}

pub fn canonical_graph6(g: &Graph) -> String {
    canonical_form(g).1
}

fn search(g: &Graph, cells: &mut [Vec<Vertex>], i: usize, order: &mut Vec<Vertex>, best: &mut Option<(String, Graph)>) {
    if i == cells.len() {
        // order[p] is the vertex placed at position p
        let mut perm = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            perm[v] = p;
        }
        let h = g.relabel(&perm);
        let s = write_graph6(&h).expect("small");
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            *best = Some((s, h));
        }
        return;
    }
    let len = cells[i].len();
    permute(g, cells, i, 0, len, order, best);
}

fn permute(
    g: &Graph,
    cells: &mut [Vec<Vertex>],
    i: usize,
    j: usize,
    len: usize,
    order: &mut Vec<Vertex>,
    best: &mut Option<(String, Graph)>,
) {
    if j == len {
        let before = order.len();
        order.extend(cells[i].iter().copied());
        search(g, cells, i + 1, order, best);
        order.truncate(before);
        return;
    }
    for x in j..len {
        cells[i].swap(j, x);
        permute(g, cells, i, j + 1, len, order, best);
        cells[i].swap(j, x);
    }
}

/// Stable colouring by iterated neighbourhood signatures; colours are ranks of
/// the sorted signatures, so they do not depend on the labelling.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colours: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|u| colours[u]).collect();
                ns.sort_unstable();
                (colours[v], ns)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| {
            let mut d = c.to_vec();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        if classes(&next) == classes(&colours) {
            return next;
        }
        colours = next;
    }
}
