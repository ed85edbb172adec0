//! Two-vertex transversals and self-contained counterexample bundles.
//!
//! Bundle format, one item per line:
//!
//! ```text
//! lct-counterexample 1
//! graph6 <string>
//! length <L>
//! cycle <v> <v> ...        (one line per longest cycle)
//! pair <u> <v> <i>         (for every pair u < v: index of a cycle avoiding both)
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{compute_lct, TransversalError};
use crate::cycles::{longest_cycle_length, Cycle, CycleError, LongestCycleSet, VertexCarrier};
use crate::decomposition::exact_treewidth;
use crate::graph::{parse_graph6, write_graph6, Graph, Graph6Error, Vertex, VertexSet};

const BUNDLE_HEADER: &str = "lct-counterexample 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    Consistent,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub lct: usize,
    pub witness: VertexSet,
    pub treewidth: usize,
    pub length: usize,
    pub cycle_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle: Option<CounterexampleBundle>,
}

/// Whether two vertices meet all longest cycles of a 2-connected graph of
/// treewidth at most 4.
pub fn conjecture_scan(g: &Graph) -> Result<Finding, TransversalError> {
    if !g.is_biconnected() {
        return Err(TransversalError::NotBiconnected);
    }
    let treewidth = exact_treewidth(g)?.width;
    if treewidth > 4 {
        return Err(TransversalError::TreewidthTooLarge { treewidth, max: 4 });
    }
    let r = compute_lct(g)?;
    let kind = if r.lct <= 2 { FindingKind::Consistent } else { FindingKind::Counterexample };
    let bundle = match kind {
        FindingKind::Counterexample => Some(CounterexampleBundle::build(g, &r.family)),
        FindingKind::Consistent => None,
    };
    Ok(Finding {
        kind,
        lct: r.lct,
        witness: r.witness,
        treewidth,
        length: r.family.length,
        cycle_count: r.family.cycles.len(),
        bundle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleBundle {
    pub graph6: String,
    pub length: usize,
    pub cycles: Vec<Cycle>,
    /// `(u, v, i)`: cycle `i` avoids both `u` and `v`.
    pub refutation: Vec<(Vertex, Vertex, usize)>,
}

impl CounterexampleBundle {
    /// Requires that no two vertices meet all of `family`.
    pub fn build(g: &Graph, family: &LongestCycleSet) -> Self {
        let n = g.vertex_count();
        let mut refutation = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for v in 1..n {
            for u in 0..v {
                let pair = VertexSet::from_iter([u, v]);
                let i = family
                    .cycles
                    .iter()
                    .position(|c| c.vertex_set().is_disjoint(pair))
                    .expect("no pair meets every longest cycle");
                refutation.push((u, v, i));
            }
        }
        CounterexampleBundle {
            graph6: write_graph6(g).expect("graph within graph6 range"),
            length: family.length,
            cycles: family.cycles.clone(),
            refutation,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{BUNDLE_HEADER}").unwrap();
        writeln!(out, "graph6 {}", self.graph6).unwrap();
        writeln!(out, "length {}", self.length).unwrap();
        for c in &self.cycles {
            let vs: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
            writeln!(out, "cycle {}", vs.join(" ")).unwrap();
        }
        for (u, v, i) in &self.refutation {
            writeln!(out, "pair {u} {v} {i}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("cycle {index}: {source}")]
    BadCycle { index: usize, source: CycleError },
    #[error("cycle {index} has length {found}, bundle claims {claimed}")]
    WrongLength { index: usize, found: usize, claimed: usize },
    #[error("bundle claims longest length {claimed}, graph has {actual}")]
    NotLongest { claimed: usize, actual: usize },
    #[error("pair ({0}, {1}) is not refuted")]
    MissingPair(Vertex, Vertex),
    #[error("cycle {2} does not avoid pair ({0}, {1})")]
    BadRefutation(Vertex, Vertex, usize),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

pub fn parse_bundle(text: &str) -> Result<CounterexampleBundle, BundleError> {
    let syntax = |line: usize, reason: &str| BundleError::Syntax { line, reason: reason.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == BUNDLE_HEADER => {}
        Some((i, _)) => return Err(syntax(i, "missing bundle header")),
        None => return Err(syntax(0, "empty bundle")),
    }
    let mut graph6 = None;
    let mut length = None;
    let mut cycles = Vec::new();
    let mut refutation = Vec::new();
    for (i, line) in lines {
        let (key, rest) = line.split_once(' ').ok_or_else(|| syntax(i, "expected a key and a value"))?;
        let numbers = || -> Result<Vec<usize>, BundleError> {
            rest.split_whitespace().map(|x| x.parse().map_err(|_| syntax(i, "expected integers"))).collect()
        };
        match key {
            "graph6" => graph6 = Some(rest.to_string()),
            "length" => length = Some(rest.parse().map_err(|_| syntax(i, "bad length"))?),
            "cycle" => {
                let seq = numbers()?;
                let index = cycles.len();
                cycles.push(Cycle::from_sequence(&seq).map_err(|source| BundleError::BadCycle { index, source })?);
            }
            "pair" => match numbers()?[..] {
                [u, v, c] => refutation.push((u, v, c)),
                _ => return Err(syntax(i, "pair lines hold three integers")),
            },
            _ => return Err(syntax(i, "unknown key")),
        }
    }
    Ok(CounterexampleBundle {
        graph6: graph6.ok_or_else(|| syntax(0, "missing graph6 line"))?,
        length: length.ok_or_else(|| syntax(0, "missing length line"))?,
        cycles,
        refutation,
    })
}

/// Re-checks a bundle from its text alone: the cycles are cycles of the graph of
/// the claimed length, that length is the longest, and every pair of vertices is
/// avoided by a listed cycle.
pub fn verify_bundle(text: &str) -> Result<CounterexampleBundle, BundleError> {
    let b = parse_bundle(text)?;
    let g = parse_graph6(&b.graph6)?;
    for (index, c) in b.cycles.iter().enumerate() {
        Cycle::new(&g, c.vertices()).map_err(|source| BundleError::BadCycle { index, source })?;
        if c.len() != b.length {
            return Err(BundleError::WrongLength { index, found: c.len(), claimed: b.length });
        }
    }
    let actual = longest_cycle_length(&g)?;
    if actual != b.length {
        return Err(BundleError::NotLongest { claimed: b.length, actual });
    }
    let n = g.vertex_count();
    for v in 1..n {
        for u in 0..v {
            let &(_, _, i) =
                b.refutation.iter().find(|&&(x, y, _)| (x, y) == (u, v)).ok_or(BundleError::MissingPair(u, v))?;
            let avoids = b.cycles.get(i).is_some_and(|c| !c.contains(u) && !c.contains(v));
            if !avoids {
                return Err(BundleError::BadRefutation(u, v, i));
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_longest_cycles;

    /// Three disjoint triangles: any two vertices miss one of them.
    fn three_triangles() -> Graph {
        let mut edges = Vec::new();
        for b in [0, 3, 6] {
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        }
        Graph::from_edges(9, &edges).unwrap()
    }

    #[test]
    fn bundle_round_trip_and_verification() {
        let g = three_triangles();
        let family = enumerate_longest_cycles(&g).unwrap();
        let b = CounterexampleBundle::build(&g, &family);
        let text = b.to_text();
        assert_eq!(parse_bundle(&text).unwrap(), b);
        assert_eq!(verify_bundle(&text).unwrap(), b);
    }

    #[test]
    fn tampered_bundles_are_rejected() {
        let g = three_triangles();
        let text = CounterexampleBundle::build(&g, &enumerate_longest_cycles(&g).unwrap()).to_text();
        let no_pair = text.replace("pair 0 1 1\n", "");
        assert_eq!(verify_bundle(&no_pair), Err(BundleError::MissingPair(0, 1)));
        let wrong = text.replace("pair 0 1 1\n", "pair 0 1 0\n");
        assert_eq!(verify_bundle(&wrong), Err(BundleError::BadRefutation(0, 1, 0)));
        assert!(matches!(verify_bundle("nonsense"), Err(BundleError::Syntax { .. })));
    }

    #[test]
    fn scan_preconditions_and_consistent_findings() {
        assert_eq!(conjecture_scan(&three_triangles()), Err(TransversalError::NotBiconnected));
        let f = conjecture_scan(&Graph::petersen()).unwrap();
        assert_eq!((f.kind, f.lct, f.treewidth), (FindingKind::Consistent, 2, 4));
        assert_eq!(
            conjecture_scan(&Graph::complete(6).unwrap()),
            Err(TransversalError::TreewidthTooLarge { treewidth: 5, max: 4 })
        );
    }
}
