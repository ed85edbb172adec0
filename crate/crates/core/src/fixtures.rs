//! Named example graphs.

use crate::cycles::{Cycle, PathSegment};
use crate::graph::{Graph, Vertex, VertexSet};

/// A graph whose vertices carry names.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub graph: Graph,
    pub names: Vec<&'static str>,
}

impl Fixture {
    pub fn id(&self, name: &str) -> Vertex {
        self.names.iter().position(|&n| n == name).unwrap_or_else(|| panic!("no vertex named {name}"))
    }

    /// Whitespace-separated names, a single name, or single-letter names run
    /// together (`"abc"`).
    pub fn set(&self, names: &str) -> VertexSet {
        self.ids(names).into_iter().collect()
    }

    pub fn path(&self, names: &str) -> PathSegment {
        PathSegment::new(&self.graph, &self.ids(names)).expect("fixture path")
    }

    pub fn cycle(&self, names: &str) -> Cycle {
        Cycle::new(&self.graph, &self.ids(names)).expect("fixture cycle")
    }

    fn ids(&self, names: &str) -> Vec<Vertex> {
        if names.contains(char::is_whitespace) || self.names.contains(&names) {
            names.split_whitespace().map(|n| self.id(n)).collect()
        } else {
            names.chars().map(|c| self.id(c.encode_utf8(&mut [0; 4]))).collect()
        }
    }
}

/// The 2-connected partial 3-tree on `a, b, c, d, v1..v5` used to illustrate
/// crossing, fencing and equivalence with respect to `S = {a, b, c, d}`.
pub fn crossing_example() -> Fixture {
    let names = vec!["a", "b", "c", "d", "v1", "v2", "v3", "v4", "v5"];
    let pairs = [
        ("a", "b"),
        ("b", "c"),
        ("a", "c"),
        ("a", "d"),
        ("b", "d"),
        ("c", "d"),
        ("b", "v1"),
        ("d", "v1"),
        ("b", "v2"),
        ("d", "v2"),
        ("b", "v3"),
        ("c", "v4"),
        ("v3", "v4"),
        ("v3", "c"),
        ("v4", "b"),
        ("a", "v1"),
        ("a", "v2"),
        ("a", "v5"),
        ("v5", "c"),
    ];
    let index = |n: &str| names.iter().position(|&x| x == n).unwrap();
    let edges: Vec<_> = pairs.iter().map(|&(u, v)| (index(u), index(v))).collect();
    let graph = Graph::from_edges(names.len(), &edges).expect("fixture edges");
    Fixture { graph, names }
}
