use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use lct_core::decomposition::{exact_treewidth, full_tree_decomposition};
use lct_core::fixtures::crossing_example;
use lct_core::forest::directed_forest;
use lct_core::generator::{generate_corpus, CorpusSpec, GeneratedGraph};
use lct_core::graph::{parse_graph6, write_graph6, Graph};
use lct_core::harness::{
    conjecture_status, exit, inspect, inspect_crossing_example, persist_evidence, read_corpus, run_conjecture,
    run_verify, summarize, verify_status, write_report, ExactSolver, Header, ReportRecord, RunConfig,
};
use lct_core::transversal::{compute_lct, verify_bundle};

#[derive(Parser)]
#[command(name = "lct", version, about = "Longest-cycle transversal experiments on partial k-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification check over a corpus.
    Verify(Campaign),
    /// Look for 2-connected partial 4-trees needing three vertices to meet all longest cycles.
    Conjecture(Campaign),
    /// Describe one graph.
    Inspect(InspectArgs),
    /// Build the directed forest over a full width-3 decomposition.
    DirectedForest(Target),
    /// Write a generated corpus as graph6 lines.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct Campaign {
    /// graph6 file, one graph per line.
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    corpus: Option<PathBuf>,
    /// Corpus description, e.g. random:k=3,n=9-14,count=1000,p=0.4
    #[arg(long)]
    generate: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest graph that is enumerated.
    #[arg(long, default_value_t = RunConfig::default().max_n)]
    max_n: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    workers: Option<usize>,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    counterexample_dir: Option<PathBuf>,
    /// Mark graphs outside the lct = 1 hypotheses as out of scope.
    #[arg(long)]
    strict_preconditions: bool,
}

#[derive(Args)]
struct Target {
    /// A graph6 string.
    #[arg(conflicts_with = "fixture")]
    graph6: Option<String>,
    /// A bundled graph; only `crossing-example` exists.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    target: Target,
    /// Also print per-bag families and cycle postures.
    #[arg(long)]
    families: bool,
    /// Re-check a persisted evidence file instead.
    #[arg(long, conflicts_with_all = ["graph6", "fixture"])]
    bundle: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<ConfigError>() {
                exit::CONFIG_ERROR
            } else {
                exit::CHECK_FAILURE
            }
        }
    };
    ExitCode::from(status as u8)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(c) => campaign(c, false),
        Command::Conjecture(c) => campaign(c, true),
        Command::Inspect(a) => {
            if a.target.fixture.as_deref() == Some("crossing-example") {
                let g = crossing_example().graph;
                print!("{}", inspect_crossing_example());
                print!("{}", inspect(&g, a.families)?);
                return Ok(exit::OK);
            }
            if let Some(path) = &a.bundle {
                return inspect_bundle(path);
            }
            let g = target_graph(&a.target)?;
            print!("{}", inspect(&g, a.families)?);
            Ok(exit::OK)
        }
        Command::DirectedForest(t) => {
            let g = target_graph(&t)?;
            if !g.is_biconnected() {
                return Err(config("directed forest needs a 2-connected graph"));
            }
            let tw = exact_treewidth(&g)?.width;
            if tw != 3 {
                return Err(config(format!("directed forest needs treewidth 3, found {tw}")));
            }
            let td = full_tree_decomposition(&g, 3)?;
            let r = compute_lct(&g)?;
            let forest = directed_forest(&g, &td, &r.family, r.lct)?;
            println!("{}", serde_json::to_string_pretty(&forest)?);
            Ok(exit::OK)
        }
        Command::Generate(a) => {
            let spec: CorpusSpec = a.spec.parse().map_err(|e| config(format!("{e}")))?;
            let corpus = generate_corpus(&spec, a.seed).map_err(|e| config(format!("{e}")))?;
            let mut w = sink(a.out.as_deref())?;
            writeln!(w, "# {spec} seed={}", a.seed)?;
            for item in &corpus {
                writeln!(w, "{}", write_graph6(&item.graph)?)?;
            }
            w.flush()?;
            Ok(exit::OK)
        }
    }
}

fn target_graph(t: &Target) -> Result<Graph> {
    match (&t.fixture, &t.graph6) {
        (Some(name), _) if name == "crossing-example" => Ok(crossing_example().graph),
        (Some(name), _) => Err(config(format!("unknown fixture {name}; only crossing-example is bundled"))),
        (None, Some(text)) => parse_graph6(text.trim()).map_err(|e| config(format!("{e}"))),
        (None, None) => Err(config("a graph6 string or --fixture is required")),
    }
}

/// A persisted bundle is re-checked from its own contents.
fn inspect_bundle(path: &Path) -> Result<i32> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.starts_with("lct-counterexample") {
        let bundle = verify_bundle(&text).map_err(|e| config(format!("{e}")))?;
        println!("bundle verified: {} longest cycles of length {}", bundle.cycles.len(), bundle.length);
        let g = parse_graph6(&bundle.graph6).map_err(|e| config(format!("{e}")))?;
        print!("{}", inspect(&g, false)?);
        return Ok(exit::OK);
    }
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("graph6 "))
        .ok_or_else(|| config(format!("{} holds no graph", path.display())))?;
    let g = parse_graph6(line.trim()).map_err(|e| config(format!("{e}")))?;
    print!("{}", inspect(&g, false)?);
    Ok(exit::OK)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn campaign(c: Campaign, conjecture: bool) -> Result<i32> {
    if c.workers == Some(0) {
        return Err(config("--workers must be at least 1"));
    }
    if c.max_n < 3 {
        return Err(config("--max-n must be at least 3"));
    }
    let (corpus, source, seed): (Vec<GeneratedGraph>, String, Option<u64>) = match (&c.corpus, &c.generate) {
        (Some(path), _) => {
            (read_corpus(path).map_err(|e| config(format!("{e}")))?, format!("file:{}", path.display()), None)
        }
        (None, Some(text)) => {
            let spec: CorpusSpec = text.parse().map_err(|e| config(format!("{e}")))?;
            let corpus = generate_corpus(&spec, c.seed).map_err(|e| config(format!("{e}")))?;
            (corpus, spec.to_string(), Some(c.seed))
        }
        (None, None) => return Err(config("--corpus or --generate is required")),
    };
    let cfg = RunConfig { max_n: c.max_n, strict_preconditions: c.strict_preconditions, workers: c.workers };
    let (command, records): (&str, Vec<ReportRecord>) = if conjecture {
        ("conjecture", run_conjecture(&corpus, &cfg))
    } else {
        ("verify", run_verify(&corpus, &cfg, &ExactSolver))
    };
    let header = Header::new(command, &source, seed, &cfg, records.len());
    write_report(sink(c.out.as_deref())?, &header, &records)?;
    if let Some(dir) = &c.counterexample_dir {
        let written = persist_evidence(dir, &records)?;
        if !written.is_empty() {
            eprintln!("wrote {} evidence files to {}", written.len(), dir.display());
        }
    }
    let summary = summarize(&records);
    eprintln!("{}", serde_json::to_string(&summary)?);
    Ok(if conjecture { conjecture_status(&records) } else { verify_status(&records) })
}
