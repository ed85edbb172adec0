//! Report records and the graph6 corpus reader.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::SCHEMA_VERSION;
use crate::generator::GeneratedGraph;
use crate::graph::{parse_graph6, Graph6Error, VertexSet};
use crate::transversal::{Finding, FindingKind, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub record: String,
    pub schema_version: u32,
    pub command: String,
    pub source: String,
    pub seed: Option<u64>,
    pub max_n: usize,
    pub strict_preconditions: bool,
    pub graphs: usize,
}

impl Header {
    pub fn new(command: &str, source: &str, seed: Option<u64>, cfg: &super::RunConfig, graphs: usize) -> Self {
        Header {
            record: "header".into(),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            source: source.into(),
            seed,
            max_n: cfg.max_n,
            strict_preconditions: cfg.strict_preconditions,
            graphs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn new(verdict: Verdict) -> Self {
        CheckOutcome { verdict, detail: None }
    }

    pub fn with(verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckOutcome { verdict, detail: Some(detail.into()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Checked,
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub micros: u64,
}

/// One graph's results. Everything except `timings` is a function of the graph,
/// its source label and the run configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub record: String,
    pub schema_version: u32,
    pub index: usize,
    pub graph6: String,
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub scope: Scope,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub biconnected: bool,
    pub treewidth: Option<usize>,
    pub length: Option<usize>,
    pub longest_cycles: Option<usize>,
    pub lct: Option<usize>,
    pub witness: Option<VertexSet>,
    pub checks: BTreeMap<String, CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finding: Option<Finding>,
    pub timings: Timings,
}

impl ReportRecord {
    pub fn has_failure(&self) -> bool {
        self.checks.values().any(|c| c.verdict.is_failure())
    }

    pub fn is_counterexample(&self) -> bool {
        self.finding.as_ref().is_some_and(|f| f.kind == FindingKind::Counterexample)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub graphs: usize,
    pub checked: usize,
    pub out_of_scope: usize,
    pub failing_graphs: usize,
    pub counterexamples: usize,
    pub verdicts: BTreeMap<String, BTreeMap<Verdict, usize>>,
}

pub fn summarize(records: &[ReportRecord]) -> Summary {
    let mut s = Summary { graphs: records.len(), ..Summary::default() };
    for r in records {
        match r.scope {
            Scope::Checked => s.checked += 1,
            Scope::OutOfScope => s.out_of_scope += 1,
        }
        s.failing_graphs += r.has_failure() as usize;
        s.counterexamples += r.is_counterexample() as usize;
        for (name, c) in &r.checks {
            *s.verdicts.entry(name.clone()).or_default().entry(c.verdict).or_default() += 1;
        }
    }
    s
}

pub fn write_report<W: Write>(mut w: W, header: &Header, records: &[ReportRecord]) -> io::Result<()> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_report<R: BufRead>(r: R) -> io::Result<(Header, Vec<ReportRecord>)> {
    let mut lines = r.lines();
    let header: Header = match lines.next() {
        Some(line) => serde_json::from_str(&line?)?,
        None => return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "empty report")),
    };
    let mut records = Vec::new();
    for line in lines {
        records.push(serde_json::from_str(&line?)?);
    }
    Ok((header, records))
}

/// A report line with its `timings` field removed, for comparing runs.
pub fn strip_timings(line: &str) -> String {
    match serde_json::from_str::<serde_json::Value>(line) {
        Ok(serde_json::Value::Object(mut map)) => {
            map.remove("timings");
            serde_json::Value::Object(map).to_string()
        }
        _ => line.to_string(),
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
}

/// One graph6 string per line; blank lines and lines starting with `#` are skipped.
pub fn read_corpus(path: &Path) -> Result<Vec<GeneratedGraph>, CorpusError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let graph = parse_graph6(line).map_err(|source| CorpusError::Parse { line: i + 1, source })?;
        out.push(GeneratedGraph { graph, source: format!("file:{}:{}", path.display(), i + 1) });
    }
    Ok(out)
}
