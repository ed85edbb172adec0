//! Backtracking enumeration of longest cycles.
//!
//! Every cycle is grown from its smallest vertex `s` through vertices larger than
//! `s`, and recorded only when its second vertex is smaller than its last, so it
//! is met exactly once and already in canonical form.

use serde::{Deserialize, Serialize};

use super::{Cycle, CycleError};
use crate::graph::{full_mask, Graph, Vertex};

pub const DEFAULT_ENUMERATION_CAP: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub max_vertices: usize,
    /// Search-node budget; `None` is unbounded.
    pub max_steps: Option<u64>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_vertices: DEFAULT_ENUMERATION_CAP, max_steps: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestCycleSet {
    /// Length of a longest cycle; 0 for forests.
    pub length: usize,
    /// All longest cycles, canonical and sorted.
    pub cycles: Vec<Cycle>,
    /// Search nodes visited.
    pub steps: u64,
}

pub fn enumerate_longest_cycles(g: &Graph) -> Result<LongestCycleSet, CycleError> {
    enumerate_longest_cycles_with(g, EnumerationLimits::default())
}

pub fn enumerate_longest_cycles_with(g: &Graph, limits: EnumerationLimits) -> Result<LongestCycleSet, CycleError> {
    let mut search = Search::new(g, limits, Mode::All)?;
    search.run()?;
    let mut cycles: Vec<Cycle> =
        search.found.iter().map(|seq| Cycle::from_sequence(seq).expect("search yields simple cycles")).collect();
    cycles.sort();
    Ok(LongestCycleSet { length: search.best, cycles, steps: search.steps })
}

/// Length of a longest cycle only; prunes branches that cannot beat the best so far.
pub fn longest_cycle_length(g: &Graph) -> Result<usize, CycleError> {
    let mut search = Search::new(g, EnumerationLimits::default(), Mode::LengthOnly)?;
    search.run()?;
    Ok(search.best)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    LengthOnly,
}

struct Search<'g> {
    g: &'g Graph,
    limits: EnumerationLimits,
    mode: Mode,
    best: usize,
    found: Vec<Vec<Vertex>>,
    steps: u64,
    path: Vec<Vertex>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, limits: EnumerationLimits, mode: Mode) -> Result<Self, CycleError> {
        let n = g.vertex_count();
        if n > limits.max_vertices {
            return Err(CycleError::CapExceeded { n, cap: limits.max_vertices });
        }
        Ok(Search { g, limits, mode, best: 0, found: Vec::new(), steps: 0, path: Vec::with_capacity(n) })
    }

    fn run(&mut self) -> Result<(), CycleError> {
        let n = self.g.vertex_count();
        for s in 0..n {
            // a cycle through s alone among larger vertices has at most n - s vertices
            if n - s < 3 || (self.mode == Mode::LengthOnly && n - s <= self.best) || (n - s < self.best) {
                break;
            }
            let allowed = full_mask(n) & !((1u64 << s) - 1) & !(1 << s);
            self.path.clear();
            self.path.push(s);
            self.extend(s, s, allowed)?;
        }
        Ok(())
    }

    /// `free`: vertices still available to the path.
    fn extend(&mut self, s: Vertex, v: Vertex, free: u64) -> Result<(), CycleError> {
        self.steps += 1;
        if let Some(budget) = self.limits.max_steps {
            if self.steps > budget {
                return Err(CycleError::BudgetExhausted(budget));
            }
        }
        let len = self.path.len();
        if len >= 3 && self.g.has_edge(v, s) && self.path[1] < v {
            self.record(len);
        }
        let reach = self.g.reach_mask(self.g.neighbor_mask(v) & free, free);
        // the cycle must come back to s from the reachable part
        let mut closable = 0u64;
        for x in crate::graph::VertexSet::from_mask(reach) {
            if self.g.has_edge(x, s) {
                closable |= 1 << x;
            }
        }
        if closable == 0 {
            return Ok(());
        }
        let bound = len + reach.count_ones() as usize;
        let pruned = match self.mode {
            Mode::All => bound < self.best,
            Mode::LengthOnly => bound <= self.best,
        };
        if pruned {
            return Ok(());
        }
        let mut next = self.g.neighbor_mask(v) & free;
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            self.path.push(x);
            self.extend(s, x, free & !(1 << x))?;
            self.path.pop();
        }
        Ok(())
    }

    fn record(&mut self, len: usize) {
        if len > self.best {
            self.best = len;
            self.found.clear();
        }
        if len == self.best && self.mode == Mode::All {
            self.found.push(self.path.clone());
        }
    }
}
