//! Per-graph check pipelines.

use std::collections::BTreeMap;
use std::time::Instant;

use super::report::{CheckOutcome, ReportRecord, Scope, Timings};
use super::{RunConfig, SCHEMA_VERSION};
use crate::classify::BagContext;
use crate::cycles::{longest_cycle_length_td, EnumerationLimits, VertexCarrier};
use crate::decomposition::{
    check_separator_property, exact_treewidth, full_tree_decomposition, separator_instances, validate,
    TreeDecomposition, DEFAULT_TREEWIDTH_CAP,
};
use crate::graph::{write_graph6, Graph};
use crate::transversal::{
    build_families, check_corollary7, check_crossing_jumps, check_lemma1, check_long_enough, check_pairwise_and_common,
    compute_lct_with, conjecture_scan, TransversalError, TransversalResult, Verdict,
};

/// Source of `lct` values; replaceable so the harness itself can be tested.
pub trait LctSolver: Sync {
    fn solve(&self, g: &Graph, limits: EnumerationLimits) -> Result<TransversalResult, TransversalError>;
}

/// Exhaustive enumeration followed by an exact hitting-set search.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSolver;

impl LctSolver for ExactSolver {
    fn solve(&self, g: &Graph, limits: EnumerationLimits) -> Result<TransversalResult, TransversalError> {
        compute_lct_with(g, limits)
    }
}

fn blank(g: &Graph, source: &str, index: usize) -> ReportRecord {
    ReportRecord {
        record: "graph".into(),
        schema_version: SCHEMA_VERSION,
        index,
        graph6: write_graph6(g).unwrap_or_default(),
        source: source.into(),
        n: g.vertex_count(),
        edges: g.edge_count(),
        scope: Scope::Checked,
        reason: None,
        biconnected: g.is_biconnected(),
        treewidth: None,
        length: None,
        longest_cycles: None,
        lct: None,
        witness: None,
        checks: BTreeMap::new(),
        finding: None,
        timings: Timings::default(),
    }
}

fn out_of_scope(mut r: ReportRecord, reason: impl Into<String>, start: Instant) -> ReportRecord {
    r.scope = Scope::OutOfScope;
    r.reason = Some(reason.into());
    r.checks.clear();
    r.timings.micros = start.elapsed().as_micros() as u64;
    r
}

/// Strongest verdict across instances: any failure, else any pass, else any
/// vacuous pass, else premise not met.
fn aggregate(verdicts: &[Verdict]) -> Verdict {
    [Verdict::Fail, Verdict::Pass, Verdict::VacuousPass]
        .into_iter()
        .find(|v| verdicts.contains(v))
        .unwrap_or(Verdict::PremiseNotMet)
}

fn counted(verdicts: &[Verdict], failures: &[String]) -> CheckOutcome {
    let met = verdicts.iter().filter(|v| matches!(v, Verdict::Pass | Verdict::Fail)).count();
    let mut detail = format!("premise met at {met} of {}", verdicts.len());
    if !failures.is_empty() {
        detail.push_str(&format!("; failing at {}", failures.join(", ")));
    }
    CheckOutcome::with(aggregate(verdicts), detail)
}

pub fn verify_graph(g: &Graph, source: &str, index: usize, cfg: &RunConfig, solver: &dyn LctSolver) -> ReportRecord {
    let start = Instant::now();
    let mut r = blank(g, source, index);
    let n = g.vertex_count();
    if n > cfg.max_n || n > DEFAULT_TREEWIDTH_CAP {
        return out_of_scope(
            r,
            format!("{n} vertices exceeds the cap of {}", cfg.max_n.min(DEFAULT_TREEWIDTH_CAP)),
            start,
        );
    }
    let tw = exact_treewidth(g).expect("within cap").width;
    r.treewidth = Some(tw);
    let in_scope = r.biconnected && tw <= 3;
    if cfg.strict_preconditions && !in_scope {
        let why = if r.biconnected { format!("treewidth {tw} exceeds 3") } else { "not 2-connected".into() };
        return out_of_scope(r, why, start);
    }
    let limits = EnumerationLimits { max_vertices: cfg.max_n, max_steps: None };
    let lct = match solver.solve(g, limits) {
        Ok(x) => x,
        Err(e) => return out_of_scope(r, e.to_string(), start),
    };
    let family = &lct.family;
    r.length = Some(family.length);
    r.longest_cycles = Some(family.cycles.len());
    r.lct = Some(lct.lct);
    r.witness = Some(lct.witness);

    let lct_one = if in_scope {
        let ok = lct.lct == 1;
        CheckOutcome::with(Verdict::from_bool(ok), format!("lct={} witness={}", lct.lct, lct.witness))
    } else {
        CheckOutcome::new(Verdict::PremiseNotMet)
    };
    r.checks.insert("lct-one".into(), lct_one);

    let prop1 = if r.biconnected {
        let sets: Vec<_> = family.cycles.iter().map(|c| c.vertex_set()).collect();
        let min = (0..sets.len())
            .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
            .map(|(i, j)| sets[i].intersection(sets[j]).len())
            .min();
        match min {
            None => CheckOutcome::with(Verdict::Pass, "one longest cycle"),
            Some(m) => CheckOutcome::with(Verdict::from_bool(m >= 2), format!("min pairwise intersection {m}")),
        }
    } else {
        CheckOutcome::new(Verdict::PremiseNotMet)
    };
    r.checks.insert("pairwise-meet".into(), prop1);

    let mut fenced = CheckOutcome::new(Verdict::PremiseNotMet);
    let mut long_enough = CheckOutcome::new(Verdict::VacuousPass);
    let mut crossing_jumps = CheckOutcome::new(Verdict::VacuousPass);
    let td = if tw <= 3 && n >= 4 { full_tree_decomposition(g, 3).ok() } else { None };
    if let Some(td) = &td {
        decomposition_checks(g, td, family.length, &mut r.checks);
        if r.biconnected {
            fenced = match check_lemma1(g, td, family, lct.lct) {
                Ok(rep) if rep.failing.is_empty() => {
                    CheckOutcome::with(rep.verdict, format!("{} nodes", rep.nodes.len()))
                }
                Ok(rep) => CheckOutcome::with(rep.verdict, format!("failing nodes {:?}", rep.failing)),
                Err(e) => CheckOutcome::with(Verdict::Fail, e.to_string()),
            };
            long_enough = CheckOutcome::new(check_long_enough(g, tw, family, lct.lct));
        }
        let mut fam_ok = true;
        let mut l5 = Vec::new();
        let mut l6 = Vec::new();
        let mut c7 = Vec::new();
        let mut c1 = Vec::new();
        let (mut f5, mut f6, mut f7, mut f1) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for t in 0..td.node_count() {
            let ctx = BagContext::new(td, t).expect("full width 3");
            let fams = build_families(g, &ctx, family).expect("full width 3");
            fam_ok &= fams.crossing2.iter().all(|i| !fams.fenced3.contains(i));
            fam_ok &= fams.triples.iter().all(|f| {
                f.pair_jumps.iter().all(|(p, c)| p.len() == 2 && c.iter().all(|&i| !f.triple_jumps.contains(&i)))
            });
            if r.biconnected {
                let v = check_crossing_jumps(g, &ctx, family, lct.lct).expect("full width 3");
                if v.is_failure() {
                    f1.push(format!("t{t}"));
                }
                c1.push(v);
            }
            for delta in ctx.bag.subsets_of_size(3) {
                let dctx = ctx.retarget(delta).expect("triple of the bag");
                let rep = check_pairwise_and_common(g, &dctx, family).expect("full width 3");
                let at = format!("t{t}/{delta}");
                if rep.pairwise.is_failure() {
                    f5.push(at.clone());
                }
                if rep.common.is_failure() {
                    f6.push(at.clone());
                }
                l5.push(rep.pairwise);
                l6.push(rep.common);
                let rep7 = check_corollary7(g, &dctx, family, lct.lct).expect("full width 3");
                if rep7.verdict.is_failure() {
                    f7.push(at);
                }
                c7.push(rep7.verdict);
            }
        }
        r.checks.insert("families".into(), CheckOutcome::new(Verdict::from_bool(fam_ok)));
        r.checks.insert("jump-pairwise".into(), counted(&l5, &f5));
        r.checks.insert("jump-common".into(), counted(&l6, &f6));
        r.checks.insert("jump-escape".into(), counted(&c7, &f7));
        if r.biconnected {
            crossing_jumps = counted(&c1, &f1);
            if crossing_jumps.verdict == Verdict::PremiseNotMet {
                crossing_jumps.verdict = Verdict::VacuousPass;
            }
        }
    }
    r.checks.insert("fenced-or-lct-one".into(), fenced);
    r.checks.insert("crossing-jumps".into(), crossing_jumps);
    r.checks.insert("long-enough".into(), long_enough);
    r.timings.micros = start.elapsed().as_micros() as u64;
    r
}

fn decomposition_checks(g: &Graph, td: &TreeDecomposition, length: usize, checks: &mut BTreeMap<String, CheckOutcome>) {
    let violations = validate(g, td);
    let valid = violations.is_empty() && td.is_full_of_width(3);
    let detail = if violations.is_empty() {
        format!("{} nodes", td.node_count())
    } else {
        violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    };
    checks.insert("decomposition".into(), CheckOutcome::with(Verdict::from_bool(valid), detail));

    let instances = separator_instances(td);
    let bad: Vec<String> = instances
        .iter()
        .filter(|&&(t, t2, u, v)| !check_separator_property(g, td, t, t2, u, v).unwrap_or(false))
        .map(|(t, t2, u, v)| format!("({t},{t2},{u},{v})"))
        .take(5)
        .collect();
    let detail = if bad.is_empty() { format!("{} instances", instances.len()) } else { bad.join(" ") };
    checks.insert("separator".into(), CheckOutcome::with(Verdict::from_bool(bad.is_empty()), detail));

    let dp = longest_cycle_length_td(g, td);
    let outcome = match dp {
        Ok(x) => CheckOutcome::with(Verdict::from_bool(x == length), format!("dp={x} enumeration={length}")),
        Err(e) => CheckOutcome::with(Verdict::Fail, e.to_string()),
    };
    checks.insert("oracle".into(), outcome);
}

pub fn conjecture_graph(g: &Graph, source: &str, index: usize, cfg: &RunConfig) -> ReportRecord {
    let start = Instant::now();
    let mut r = blank(g, source, index);
    let n = g.vertex_count();
    if n > cfg.max_n || n > DEFAULT_TREEWIDTH_CAP {
        return out_of_scope(
            r,
            format!("{n} vertices exceeds the cap of {}", cfg.max_n.min(DEFAULT_TREEWIDTH_CAP)),
            start,
        );
    }
    match conjecture_scan(g) {
        Ok(f) => {
            r.treewidth = Some(f.treewidth);
            r.length = Some(f.length);
            r.longest_cycles = Some(f.cycle_count);
            r.lct = Some(f.lct);
            r.witness = Some(f.witness);
            r.finding = Some(f);
        }
        Err(e) => return out_of_scope(r, e.to_string(), start),
    }
    r.timings.micros = start.elapsed().as_micros() as u64;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::crossing_example;

    #[test]
    fn crossing_example_passes_every_check() {
        let r = verify_graph(&crossing_example().graph, "fixture", 0, &RunConfig::default(), &ExactSolver);
        assert_eq!(r.scope, Scope::Checked);
        assert!(!r.has_failure(), "{:#?}", r.checks);
        assert_eq!(r.checks["lct-one"].verdict, Verdict::Pass);
        assert_eq!(r.checks["fenced-or-lct-one"].verdict, Verdict::Pass);
        assert_eq!(r.checks["long-enough"].verdict, Verdict::VacuousPass);
    }

    #[test]
    fn petersen_is_out_of_scope_when_strict() {
        let cfg = RunConfig { strict_preconditions: true, ..RunConfig::default() };
        let r = verify_graph(&Graph::petersen(), "petersen", 0, &cfg, &ExactSolver);
        assert_eq!(r.scope, Scope::OutOfScope);
        assert!(!r.has_failure());
        let lax = verify_graph(&Graph::petersen(), "petersen", 0, &RunConfig::default(), &ExactSolver);
        assert_eq!(lax.checks["lct-one"].verdict, Verdict::PremiseNotMet);
        assert_eq!(lax.checks["pairwise-meet"].verdict, Verdict::Pass);
        assert!(!lax.has_failure());
    }
}
