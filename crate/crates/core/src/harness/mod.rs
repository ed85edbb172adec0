//! Campaign driver: per-graph checks, JSON-lines reports and persisted evidence.

mod checks;
mod inspect;
mod report;

pub use checks::{conjecture_graph, verify_graph, ExactSolver, LctSolver};
pub use inspect::{inspect, inspect_crossing_example};
pub use report::{
    read_corpus, read_report, strip_timings, summarize, write_report, CheckOutcome, CorpusError, Header, ReportRecord,
    Scope, Summary, Timings,
};

use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::DEFAULT_ENUMERATION_CAP;
use crate::generator::GeneratedGraph;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILURE: i32 = 1;
    pub const CONFIG_ERROR: i32 = 2;
    pub const COUNTEREXAMPLE: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Enumeration cap on the number of vertices.
    pub max_n: usize,
    /// Mark graphs outside a check's hypotheses as out of scope instead of
    /// running the checks that still apply.
    pub strict_preconditions: bool,
    /// Worker threads; `None` uses every available CPU. Never affects output.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_n: DEFAULT_ENUMERATION_CAP, strict_preconditions: false, workers: None }
    }
}

fn pool(cfg: &RunConfig) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(cfg.workers.unwrap_or(0)).build().expect("thread pool")
}

/// Runs every verification check on each graph; records come back in corpus order.
pub fn run_verify(corpus: &[GeneratedGraph], cfg: &RunConfig, solver: &dyn LctSolver) -> Vec<ReportRecord> {
    pool(cfg).install(|| {
        corpus.par_iter().enumerate().map(|(i, item)| verify_graph(&item.graph, &item.source, i, cfg, solver)).collect()
    })
}

/// Computes the two-vertex transversal finding for each graph.
pub fn run_conjecture(corpus: &[GeneratedGraph], cfg: &RunConfig) -> Vec<ReportRecord> {
    pool(cfg).install(|| {
        corpus.par_iter().enumerate().map(|(i, item)| conjecture_graph(&item.graph, &item.source, i, cfg)).collect()
    })
}

/// Writes one evidence file per failing or counterexample record and returns
/// the paths written, in record order.
pub fn persist_evidence(dir: &Path, records: &[ReportRecord]) -> io::Result<Vec<std::path::PathBuf>> {
    let mut written = Vec::new();
    for r in records {
        let text = if let Some(bundle) = r.finding.as_ref().and_then(|f| f.bundle.as_ref()) {
            bundle.to_text()
        } else if r.has_failure() {
            let mut text = format!("lct-failure 1\ngraph6 {}\nsource {}\n", r.graph6, r.source);
            for (name, outcome) in r.checks.iter().filter(|(_, o)| o.verdict.is_failure()) {
                text.push_str(&format!("fail {name} {}\n", outcome.detail.as_deref().unwrap_or("")));
            }
            text
        } else {
            continue;
        };
        if written.is_empty() {
            fs::create_dir_all(dir)?;
        }
        let path = dir.join(format!("graph-{:06}.txt", r.index));
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

/// Exit status of a verification run: any failing check wins.
pub fn verify_status(records: &[ReportRecord]) -> i32 {
    if records.iter().any(ReportRecord::has_failure) {
        exit::CHECK_FAILURE
    } else {
        exit::OK
    }
}

/// Exit status of a conjecture run; consistent findings never fail it.
pub fn conjecture_status(records: &[ReportRecord]) -> i32 {
    if records.iter().any(ReportRecord::is_counterexample) {
        exit::COUNTEREXAMPLE
    } else {
        exit::OK
    }
}
