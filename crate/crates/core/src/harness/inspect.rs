//! Human-readable dumps of a single graph.

use std::fmt::Write as _;

use crate::classify::{cross_or_fence, cycle_posture, k_intersect, s_equivalent, BagContext, Separation};
use crate::cycles::{Cycle, PathSegment, VertexCarrier};
use crate::decomposition::{exact_treewidth, full_tree_decomposition, DecompositionError};
use crate::fixtures::{crossing_example, Fixture};
use crate::graph::{write_graph6, Graph};
use crate::transversal::{build_families, compute_lct, TransversalError};

/// Structure, longest cycles and transversal of `g`; with `families`, also the
/// per-bag family sizes and every longest cycle's posture at each triple.
pub fn inspect(g: &Graph, families: bool) -> Result<String, TransversalError> {
    let mut out = String::new();
    let n = g.vertex_count();
    let g6 = write_graph6(g).unwrap_or_else(|_| "-".into());
    let _ = writeln!(out, "graph6 {g6}");
    let _ = writeln!(out, "n {n}");
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(out, "edges {} [{}]", edges.len(), edges.join(" "));
    let _ = writeln!(out, "biconnected {}", g.is_biconnected());
    let tw = exact_treewidth(g)?.width;
    let _ = writeln!(out, "treewidth {tw}");
    let full = if n > tw { full_tree_decomposition(g, tw.max(1)).ok() } else { None };
    match &full {
        Some(td) => {
            let _ = writeln!(out, "decomposition width {} nodes {}", td.width(), td.node_count());
            for (t, bag) in td.bags().iter().enumerate() {
                let _ = writeln!(out, "  bag {t} {bag} adj {:?}", td.neighbors(t));
            }
        }
        None => {
            let _ = writeln!(out, "decomposition none");
        }
    }
    let r = compute_lct(g)?;
    let _ = writeln!(out, "longest {}", r.family.length);
    let _ = writeln!(out, "longest-cycles {}", r.family.cycles.len());
    let _ = writeln!(out, "lct {} witness {}", r.lct, r.witness);
    if !families {
        return Ok(out);
    }
    let td = match full_tree_decomposition(g, 3) {
        Ok(td) => td,
        Err(e @ (DecompositionError::WidthExceeded { .. } | DecompositionError::TooFewVertices { .. })) => {
            let _ = writeln!(out, "families unavailable: {e}");
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    for (i, c) in r.family.cycles.iter().enumerate() {
        let _ = writeln!(out, "cycle {i} {}", fmt_seq(c.vertices()));
    }
    for t in 0..td.node_count() {
        let ctx = BagContext::new(&td, t)?;
        let fams = build_families(g, &ctx, &r.family)?;
        let _ = writeln!(out, "bag {t} {}: crossing2 {} fenced3 {}", ctx.bag, fams.crossing2.len(), fams.fenced3.len());
        for f in &fams.triples {
            let pairs: Vec<String> = f.pair_jumps.iter().map(|(p, c)| format!("{p}:{}", c.len())).collect();
            let _ = writeln!(
                out,
                "  triple {} meets {} jumps [{}] triple-jumps {}",
                f.delta,
                f.meets_bag_at_delta.len(),
                pairs.join(" "),
                f.triple_jumps.len()
            );
            let tctx = ctx.retarget(f.delta)?;
            for (i, c) in r.family.cycles.iter().enumerate() {
                if k_intersect(c, f.delta).count < 2 {
                    continue;
                }
                let p = cycle_posture(&tctx, c)?;
                let _ = writeln!(out, "    cycle {i} {:?} ell {} at {}", p.tag, p.ell, p.at);
            }
        }
    }
    Ok(out)
}

fn fmt_seq(seq: &[usize]) -> String {
    seq.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn describe<X: VertexCarrier>(f: &Fixture, g: &Graph, label: &str, x: &X, s_names: &str) -> String {
    let s = f.set(s_names);
    let hit = k_intersect(x, s);
    let sep = match cross_or_fence(g, x, s) {
        Separation::Crosses => "crosses",
        Separation::Fenced => "fenced by",
    };
    let at: Vec<&str> = hit.at.iter().map(|v| f.names[v]).collect();
    format!("{label}: {}-intersects S at {{{}}}, {sep} S", hit.count, at.join(","))
}

/// The illustrated graph with `S = {a, b, c, d}`: every stated crossing, fencing
/// and equivalence claim, recomputed.
pub fn inspect_crossing_example() -> String {
    let f = crossing_example();
    let g = &f.graph;
    let s = f.set("abcd");
    let mut out = String::from("crossing-example S={a,b,c,d}\n");
    let paths: [(&str, PathSegment); 3] =
        [("P1 v1av5", f.path("v1 a v5")), ("P2 v3cdbv4", f.path("v3 c d b v4")), ("cd", f.path("c d"))];
    for (label, p) in &paths {
        let _ = writeln!(out, "{}", describe(&f, g, label, p, "abcd"));
    }
    let cycles: [(&str, Cycle); 3] =
        [("C1 v1bv2dv1", f.cycle("v1 b v2 d")), ("C2 v3v4cabv3", f.cycle("v3 v4 c a b")), ("abda", f.cycle("a b d"))];
    for (label, c) in &cycles {
        let _ = writeln!(out, "{}", describe(&f, g, label, c, "abcd"));
    }
    let p_eq = s_equivalent(&paths[1].1, &f.path("v1 b c d v2"), s);
    let c_eq = s_equivalent(&cycles[1].1, &f.cycle("v1 b c v5 a"), s);
    let _ = writeln!(out, "P2 ~ v1bcdv2: {p_eq}");
    let _ = writeln!(out, "C2 ~ v1bcv5av1: {c_eq}");
    let _ = writeln!(out, "C1 ~ C2: {}", s_equivalent(&cycles[0].1, &cycles[1].1, s));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_summary() {
        let text = inspect(&Graph::complete(4).unwrap(), true).unwrap();
        assert!(text.contains("treewidth 3"));
        assert!(text.contains("longest 4\n"));
        assert!(text.contains("longest-cycles 3\n"));
        assert!(text.contains("lct 1 "));
    }

    #[test]
    fn crossing_example_dump_states_the_labelled_claims() {
        let text = inspect_crossing_example();
        assert!(text.contains("P1 v1av5: 1-intersects S at {a}, crosses S"));
        assert!(text.contains("P2 v3cdbv4: 3-intersects S at {b,c,d}, fenced by S"));
        assert!(text.contains("C1 v1bv2dv1: 2-intersects S at {b,d}, crosses S"));
        assert!(text.contains("C2 v3v4cabv3: 3-intersects S at {a,b,c}, fenced by S"));
        assert!(text.contains("cd: 2-intersects S at {c,d}, fenced by S"));
        assert!(text.contains("abda: 3-intersects S at {a,b,d}, fenced by S"));
        assert!(text.contains("P2 ~ v1bcdv2: true"));
        assert!(text.contains("C2 ~ v1bcv5av1: true"));
    }
}
