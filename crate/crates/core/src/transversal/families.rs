//! Longest-cycle families attached to a bag and the checks phrased over them.
//! Families hold indices into the longest-cycle list they were built from.

use serde::{Deserialize, Serialize};

use super::{TransversalError, Verdict};
use crate::classify::{cross_or_fence, cycle_posture, k_intersect, s_equivalent, BagContext, Posture, Separation};
use crate::cycles::{Cycle, LongestCycleSet, VertexCarrier};
use crate::decomposition::{validate, BranchTarget, DecompositionError, Node, TreeDecomposition};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFamilies {
    pub delta: VertexSet,
    /// Cycles meeting the bag exactly in the triple.
    pub meets_bag_at_delta: Vec<usize>,
    /// For each pair of the triple, in lexicographic order, the cycles 2-jumping at it.
    pub pair_jumps: Vec<(VertexSet, Vec<usize>)>,
    /// Cycles 3-jumping the triple.
    pub triple_jumps: Vec<usize>,
}

impl TripleFamilies {
    pub fn all_pairs_jumped(&self) -> bool {
        self.pair_jumps.iter().all(|(_, c)| !c.is_empty())
    }

    /// Union of the jump families, sorted.
    pub fn jumping(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .pair_jumps
            .iter()
            .flat_map(|(_, c)| c.iter().copied())
            .chain(self.triple_jumps.iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFamilies {
    pub t: Node,
    /// Longest cycles 2-crossing the bag.
    pub crossing2: Vec<usize>,
    /// Longest cycles fenced by the bag and meeting it at most three times.
    pub fenced3: Vec<usize>,
    /// One entry per triple of the bag, in lexicographic order.
    pub triples: Vec<TripleFamilies>,
}

pub fn build_families(
    g: &Graph,
    ctx: &BagContext<'_>,
    longest: &LongestCycleSet,
) -> Result<CycleFamilies, TransversalError> {
    let bag = ctx.bag;
    let mut crossing2 = Vec::new();
    let mut fenced3 = Vec::new();
    for (i, c) in longest.cycles.iter().enumerate() {
        let hit = k_intersect(c, bag);
        match cross_or_fence(g, c, bag) {
            Separation::Crosses if hit.count == 2 => crossing2.push(i),
            Separation::Fenced if hit.count <= 3 => fenced3.push(i),
            _ => {}
        }
    }
    let mut triples = Vec::with_capacity(4);
    for delta in bag.subsets_of_size(3) {
        let tctx = BagContext::with_delta(ctx.td, ctx.t, delta)?;
        let mut fam = TripleFamilies {
            delta,
            meets_bag_at_delta: Vec::new(),
            pair_jumps: delta.subsets_of_size(2).into_iter().map(|p| (p, Vec::new())).collect(),
            triple_jumps: Vec::new(),
        };
        for (i, c) in longest.cycles.iter().enumerate() {
            if c.vertex_set().intersection(bag) == delta {
                fam.meets_bag_at_delta.push(i);
            }
            if k_intersect(c, delta).count < 2 {
                continue;
            }
            let posture = cycle_posture(&tctx, c)?;
            if posture.tag != Posture::Jump {
                continue;
            }
            if posture.ell == 3 {
                fam.triple_jumps.push(i);
            } else {
                let slot = fam.pair_jumps.iter_mut().find(|(p, _)| *p == posture.at).expect("pair of delta");
                slot.1.push(i);
            }
        }
        triples.push(fam);
    }
    Ok(CycleFamilies { t: ctx.t, crossing2, fenced3, triples })
}

fn require_setting(g: &Graph, td: &TreeDecomposition) -> Result<(), TransversalError> {
    if !g.is_biconnected() {
        return Err(TransversalError::NotBiconnected);
    }
    if !td.is_full_of_width(3) {
        return Err(DecompositionError::NotFull { expected: 3 }.into());
    }
    let violations = validate(g, td);
    if !violations.is_empty() {
        return Err(DecompositionError::Invalid(violations).into());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFenced {
    pub t: Node,
    pub fenced3: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FencedReport {
    pub verdict: Verdict,
    pub nodes: Vec<NodeFenced>,
    pub failing: Vec<Node>,
}

/// At every node: `lct = 1`, or some longest cycle is fenced by the bag and
/// meets it at most three times.
pub fn check_lemma1(
    g: &Graph,
    td: &TreeDecomposition,
    longest: &LongestCycleSet,
    lct: usize,
) -> Result<FencedReport, TransversalError> {
    require_setting(g, td)?;
    let mut nodes = Vec::with_capacity(td.node_count());
    for t in 0..td.node_count() {
        let bag = td.bag(t);
        let fenced3 = longest
            .cycles
            .iter()
            .filter(|c| k_intersect(*c, bag).count <= 3 && cross_or_fence(g, *c, bag) == Separation::Fenced)
            .count();
        nodes.push(NodeFenced { t, fenced3, verdict: Verdict::from_bool(lct == 1 || fenced3 > 0) });
    }
    let failing: Vec<Node> = nodes.iter().filter(|n| n.verdict.is_failure()).map(|n| n.t).collect();
    Ok(FencedReport { verdict: Verdict::from_bool(failing.is_empty()), nodes, failing })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFamily {
    /// Components of `G - V_t` whose branch lies in the branch union of the
    /// triple, each with the neighbour of `t` that enters its branch.
    pub components: Vec<(VertexSet, Node)>,
}

pub fn component_family(g: &Graph, ctx: &BagContext<'_>) -> Result<ComponentFamily, TransversalError> {
    let union = ctx.branch_union()?;
    let mut components = Vec::new();
    for a in g.components_after_removal(ctx.bag) {
        let v = a.min().expect("components are non-empty");
        let branch = ctx.td.branch_of(ctx.t, BranchTarget::Vertex(v))?;
        let anchor = branch.entry.expect("a vertex outside the bag lies in a real branch");
        if union.contains_branch(&branch) {
            components.push((a, anchor));
        }
    }
    Ok(ComponentFamily { components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseCommonReport {
    pub delta: VertexSet,
    /// Pairwise intersection within one inside component.
    pub pairwise: Verdict,
    /// A common vertex inside the triple.
    pub common: Verdict,
    pub family_size: usize,
    pub component: Option<VertexSet>,
    pub common_vertices: VertexSet,
    /// A pair of family members with no common vertex in any single candidate
    /// component, reported on failure.
    pub witness_pair: Option<(Cycle, Cycle)>,
}

/// When every pair of the triple is 2-jumped, all jumping cycles pairwise meet in
/// one inside component and share a vertex inside the triple.
pub fn check_pairwise_and_common(
    g: &Graph,
    ctx: &BagContext<'_>,
    longest: &LongestCycleSet,
) -> Result<PairwiseCommonReport, TransversalError> {
    let delta = ctx.delta()?;
    let fam = triple_families(g, ctx, longest)?;
    let mut report = PairwiseCommonReport {
        delta,
        pairwise: Verdict::PremiseNotMet,
        common: Verdict::PremiseNotMet,
        family_size: 0,
        component: None,
        common_vertices: VertexSet::new(),
        witness_pair: None,
    };
    if !fam.all_pairs_jumped() {
        return Ok(report);
    }
    let members: Vec<&Cycle> = fam.jumping().into_iter().map(|i| &longest.cycles[i]).collect();
    report.family_size = members.len();

    let comps = component_family(g, ctx)?;
    let meets_in = |a: VertexSet| {
        for (i, c) in members.iter().enumerate() {
            for d in &members[i + 1..] {
                if c.vertex_set().intersection(d.vertex_set()).is_disjoint(a) {
                    return Err(((*c).clone(), (*d).clone()));
                }
            }
        }
        Ok(())
    };
    let mut first_failure = None;
    for &(a, _) in &comps.components {
        match meets_in(a) {
            Ok(()) => {
                report.component = Some(a);
                break;
            }
            Err(pair) => {
                first_failure.get_or_insert(pair);
            }
        }
    }
    report.pairwise = Verdict::from_bool(report.component.is_some());
    if report.component.is_none() {
        report.witness_pair = first_failure;
    }

    let common = members.iter().fold(VertexSet::full(g.vertex_count()), |acc, c| acc.intersection(c.vertex_set()));
    report.common_vertices = common.intersection(ctx.inside_set()?);
    report.common = Verdict::from_bool(!report.common_vertices.is_empty());
    Ok(report)
}

fn triple_families(
    g: &Graph,
    ctx: &BagContext<'_>,
    longest: &LongestCycleSet,
) -> Result<TripleFamilies, TransversalError> {
    let delta = ctx.delta()?;
    let all = build_families(g, &BagContext::new(ctx.td, ctx.t)?, longest)?;
    Ok(all.triples.into_iter().find(|f| f.delta == delta).expect("delta is a triple of the bag"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpEscapeReport {
    pub delta: VertexSet,
    pub verdict: Verdict,
    /// A longest cycle satisfying the conclusion.
    pub witness: Option<Cycle>,
}

/// When `lct > 1` and every pair of the triple is 2-jumped, some longest cycle
/// meets the bag at most once, is outside the triple, or is inside it and either
/// 2-intersects it or 3-intersects it while fenced by it.
pub fn check_corollary7(
    g: &Graph,
    ctx: &BagContext<'_>,
    longest: &LongestCycleSet,
    lct: usize,
) -> Result<JumpEscapeReport, TransversalError> {
    let delta = ctx.delta()?;
    let mut report = JumpEscapeReport { delta, verdict: Verdict::PremiseNotMet, witness: None };
    if lct <= 1 || !triple_families(g, ctx, longest)?.all_pairs_jumped() {
        return Ok(report);
    }
    for c in &longest.cycles {
        if k_intersect(c, ctx.bag).count <= 1 {
            report.witness = Some(c.clone());
            break;
        }
        if k_intersect(c, delta).count < 2 {
            continue;
        }
        let p = cycle_posture(ctx, c)?;
        let ok = match p.tag {
            Posture::Outside => true,
            Posture::Inside if p.ell == 2 => true,
            Posture::Inside => cross_or_fence(g, c, delta) == Separation::Fenced,
            Posture::Jump => false,
        };
        if ok {
            report.witness = Some(c.clone());
            break;
        }
    }
    report.verdict = Verdict::from_bool(report.witness.is_some());
    Ok(report)
}

/// Every cycle 2-crossing the bag at `{a, b}` jumps both `abc` and `abd`, under the
/// standing hypotheses `lct > 1` and a non-empty set of 2-crossing cycles that
/// all meet the bag in the same pair. Outside those hypotheses the check passes
/// vacuously.
pub fn check_crossing_jumps(
    g: &Graph,
    ctx: &BagContext<'_>,
    longest: &LongestCycleSet,
    lct: usize,
) -> Result<Verdict, TransversalError> {
    let fam = build_families(g, &BagContext::new(ctx.td, ctx.t)?, longest)?;
    let Some(&first) = fam.crossing2.first() else {
        return Ok(Verdict::VacuousPass);
    };
    let reference = &longest.cycles[first];
    let equivalent = fam.crossing2.iter().all(|&i| s_equivalent(&longest.cycles[i], reference, ctx.bag));
    if lct <= 1 || !equivalent {
        return Ok(Verdict::VacuousPass);
    }
    let pair = reference.vertex_set().intersection(ctx.bag);
    for &i in &fam.crossing2 {
        for x in ctx.bag.difference(pair) {
            let p = cycle_posture(&ctx.retarget(pair.with(x))?, &longest.cycles[i])?;
            if p.tag != Posture::Jump {
                return Ok(Verdict::Fail);
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `L >= 5` for 2-connected graphs of treewidth 3 with `lct > 1`; vacuous otherwise.
pub fn check_long_enough(g: &Graph, treewidth: usize, longest: &LongestCycleSet, lct: usize) -> Verdict {
    if treewidth != 3 || !g.is_biconnected() || lct <= 1 {
        Verdict::VacuousPass
    } else {
        Verdict::from_bool(longest.length >= 5)
    }
}
