//! Exact combinatorics for longest cycles in graphs of bounded treewidth.

pub mod classify;
pub mod cycles;
pub mod decomposition;
pub mod fixtures;
pub mod forest;
pub mod generator;
pub mod graph;
pub mod harness;
pub mod transversal;
