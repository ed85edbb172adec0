//! Corpus descriptions such as `random:k=3,n=9-14,count=1000,p=0.4`,
//! `exhaustive:k=3,n=8` or `biconnected:n=5-12,count=500,p=0.2-0.45`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    exhaustive_small, generate_partial_k_tree, random_biconnected_graph, DeletionPolicy, GenError, GenMode, GenSpec,
};
use crate::graph::Graph;

const BICONNECTED_ATTEMPTS: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CorpusSpec {
    /// 2-connected partial k-trees with `n` drawn from the range.
    Random { k: usize, n: (usize, usize), count: usize, p: f64 },
    /// All 2-connected partial k-trees up to `n` vertices.
    Exhaustive { k: usize, n: usize },
    /// 2-connected `G(n, p)` samples, `p` drawn from the range.
    Biconnected { n: (usize, usize), count: usize, p: (f64, f64) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub source: String,
}

pub fn generate_corpus(spec: &CorpusSpec, seed: u64) -> Result<Vec<GeneratedGraph>, GenError> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        CorpusSpec::Exhaustive { k, n } => Ok(exhaustive_small(n, k)?
            .into_iter()
            .enumerate()
            .map(|(i, graph)| GeneratedGraph { graph, source: format!("exhaustive:k={k},n={n}#{i}") })
            .collect()),
        CorpusSpec::Random { k, n, count, p } => (0..count)
            .map(|_| {
                let size = master.gen_range(n.0..=n.1);
                let s: u64 = master.gen();
                let spec = GenSpec {
                    n: size,
                    k,
                    mode: GenMode::Random,
                    seed: s,
                    deletion: DeletionPolicy { probability: p, ..DeletionPolicy::default() },
                    require_biconnected: true,
                };
                let graph = generate_partial_k_tree(&spec)?;
                Ok(GeneratedGraph { graph, source: format!("random:k={k},n={size},p={p},seed={s}") })
            })
            .collect(),
        CorpusSpec::Biconnected { n, count, p } => (0..count)
            .map(|_| {
                let size = master.gen_range(n.0..=n.1);
                let prob = if p.0 == p.1 { p.0 } else { master.gen_range(p.0..=p.1) };
                let s: u64 = master.gen();
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let graph = random_biconnected_graph(size, prob, &mut rng, BICONNECTED_ATTEMPTS)?;
                Ok(GeneratedGraph { graph, source: format!("biconnected:n={size},p={prob:.4},seed={s}") })
            })
            .collect(),
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let range = |r: (usize, usize)| if r.0 == r.1 { r.0.to_string() } else { format!("{}-{}", r.0, r.1) };
        match *self {
            CorpusSpec::Random { k, n, count, p } => write!(f, "random:k={k},n={},count={count},p={p}", range(n)),
            CorpusSpec::Exhaustive { k, n } => write!(f, "exhaustive:k={k},n={n}"),
            CorpusSpec::Biconnected { n, count, p } => {
                let pr = if p.0 == p.1 { p.0.to_string() } else { format!("{}-{}", p.0, p.1) };
                write!(f, "biconnected:n={},count={count},p={pr}", range(n))
            }
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = GenError;

    fn from_str(text: &str) -> Result<Self, GenError> {
        let bad = |reason: &str| GenError::BadSpec { spec: text.to_string(), reason: reason.to_string() };
        let (kind, rest) = text.split_once(':').ok_or_else(|| bad("expected KIND:key=value,..."))?;
        let mut k = None;
        let mut n = None;
        let mut count = None;
        let mut p = None;
        for item in rest.split(',').filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key.trim() {
                "k" => k = Some(value.parse::<usize>().map_err(|_| bad("k must be an integer"))?),
                "n" => n = Some(parse_range::<usize>(value).ok_or_else(|| bad("n must be N or LO-HI"))?),
                "count" => count = Some(value.parse::<usize>().map_err(|_| bad("count must be an integer"))?),
                "p" => p = Some(parse_range::<f64>(value).ok_or_else(|| bad("p must be P or LO-HI"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        if n.0 > n.1 {
            return Err(bad("empty n range"));
        }
        if let Some((lo, hi)) = p {
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                return Err(bad("p must lie in [0, 1]"));
            }
        }
        match kind {
            "random" => Ok(CorpusSpec::Random {
                k: k.ok_or_else(|| bad("missing k"))?,
                n,
                count: count.ok_or_else(|| bad("missing count"))?,
                p: match p {
                    None => DeletionPolicy::default().probability,
                    Some((lo, hi)) if lo == hi => lo,
                    Some(_) => return Err(bad("random corpora take a single p")),
                },
            }),
            "exhaustive" => {
                if n.0 != n.1 {
                    return Err(bad("exhaustive corpora take a single n"));
                }
                Ok(CorpusSpec::Exhaustive { k: k.ok_or_else(|| bad("missing k"))?, n: n.0 })
            }
            "biconnected" => Ok(CorpusSpec::Biconnected {
                n,
                count: count.ok_or_else(|| bad("missing count"))?,
                p: p.ok_or_else(|| bad("missing p"))?,
            }),
            _ => Err(bad("kind must be random, exhaustive or biconnected")),
        }
    }
}

fn parse_range<T: FromStr + Copy>(value: &str) -> Option<(T, T)> {
    match value.split_once('-') {
        Some((lo, hi)) => Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?)),
        None => {
            let x = value.trim().parse().ok()?;
            Some((x, x))
        }
    }
}
