//! Longest-cycle transversals, the cycle families attached to a bag, and the
//! checkers built on them.

mod conjecture;
mod families;

pub use conjecture::{
    conjecture_scan, parse_bundle, verify_bundle, BundleError, CounterexampleBundle, Finding, FindingKind,
};
pub use families::{
    build_families, check_corollary7, check_crossing_jumps, check_lemma1, check_long_enough, check_pairwise_and_common,
    component_family, ComponentFamily, CycleFamilies, FencedReport, JumpEscapeReport, NodeFenced, PairwiseCommonReport,
    TripleFamilies,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::ClassifyError;
use crate::cycles::{enumerate_longest_cycles_with, CycleError, EnumerationLimits, LongestCycleSet, VertexCarrier};
use crate::decomposition::DecompositionError;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("graph is acyclic; there are no longest cycles to meet")]
    Acyclic,
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("treewidth {treewidth} exceeds {max}")]
    TreewidthTooLarge { treewidth: usize, max: usize },
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Outcome of one check on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PremiseNotMet,
    VacuousPass,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalResult {
    pub lct: usize,
    /// Lexicographically least among the minimum hitting sets.
    pub witness: VertexSet,
    pub family: LongestCycleSet,
}

pub fn compute_lct(g: &Graph) -> Result<TransversalResult, TransversalError> {
    compute_lct_with(g, EnumerationLimits::default())
}

pub fn compute_lct_with(g: &Graph, limits: EnumerationLimits) -> Result<TransversalResult, TransversalError> {
    let family = enumerate_longest_cycles_with(g, limits)?;
    if family.cycles.is_empty() {
        return Err(TransversalError::Acyclic);
    }
    let masks: Vec<VertexSet> = family.cycles.iter().map(|c| c.vertex_set()).collect();
    let (lct, witness) = minimum_hitting_set(&masks);
    Ok(TransversalResult { lct, witness, family })
}

pub fn hits_all(set: VertexSet, sets: &[VertexSet]) -> bool {
    sets.iter().all(|s| !s.is_disjoint(set))
}

/// Size and lexicographically least witness of a minimum hitting set of `sets`.
/// Sizes 1 to 3 are found by direct scan; larger ones by branch and bound
/// followed by a scan at the optimal size.
pub fn minimum_hitting_set(sets: &[VertexSet]) -> (usize, VertexSet) {
    if sets.is_empty() {
        return (0, VertexSet::new());
    }
    let universe = sets.iter().fold(VertexSet::new(), |acc, &s| acc.union(s));
    for k in 1..=3.min(universe.len()) {
        if let Some(w) = universe.subsets_of_size(k).into_iter().find(|&w| hits_all(w, sets)) {
            return (k, w);
        }
    }
    let mut best = universe.len();
    branch(sets, VertexSet::new(), &mut best);
    let w = universe
        .subsets_of_size(best)
        .into_iter()
        .find(|&w| hits_all(w, sets))
        .expect("branch and bound found a hitting set of this size");
    (best, w)
}

fn branch(sets: &[VertexSet], chosen: VertexSet, best: &mut usize) {
    if chosen.len() >= *best {
        return;
    }
    let unhit = sets.iter().filter(|s| s.is_disjoint(chosen)).min_by_key(|s| s.len());
    match unhit {
        None => *best = chosen.len(),
        Some(s) => {
            if chosen.len() + 1 >= *best {
                return;
            }
            for v in *s {
                branch(sets, chosen.with(v), best);
            }
        }
    }
}
