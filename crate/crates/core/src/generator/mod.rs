//! Seeded k-trees, partial k-trees, exhaustive small corpora and random
//! 2-connected graphs.

mod canonical;
mod corpus;

pub use canonical::{canonical_form, canonical_graph6};
pub use corpus::{generate_corpus, CorpusSpec, GeneratedGraph};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{Node, TreeDecomposition};
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest order for which exhaustive generation is offered.
pub const EXHAUSTIVE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("a {k}-tree needs at least {} vertices, asked for {n}", k + 1)]
    TooFewVertices { n: usize, k: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("exhaustive generation is limited to n <= {EXHAUSTIVE_MAX_N}, asked for {0}")]
    CapExceeded(usize),
    #[error("deletion probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("gave up after {0} attempts")]
    RetriesExhausted(u32),
    #[error("bad corpus spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    Random,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeletionPolicy {
    /// Each k-tree edge is deleted independently with this probability.
    pub probability: f64,
    /// Fresh k-trees tried before giving up.
    pub max_retries: u32,
}

impl Default for DeletionPolicy {
    fn default() -> Self {
        DeletionPolicy { probability: 0.4, max_retries: 16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub mode: GenMode,
    pub seed: u64,
    pub deletion: DeletionPolicy,
    pub require_biconnected: bool,
}

impl GenSpec {
    pub fn random(n: usize, k: usize, seed: u64) -> Self {
        GenSpec { n, k, mode: GenMode::Random, seed, deletion: DeletionPolicy::default(), require_biconnected: true }
    }

    pub fn with_deletion(mut self, probability: f64) -> Self {
        self.deletion.probability = probability;
        self
    }
}

/// A random k-tree with its natural full decomposition of width `k`, one bag per
/// added vertex. Vertices are relabelled by a random permutation.
pub fn generate_k_tree(spec: &GenSpec) -> Result<(Graph, TreeDecomposition), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    k_tree(spec.n, spec.k, &mut rng)
}

fn k_tree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<(Graph, TreeDecomposition), GenError> {
    if k == 0 {
        return Err(GenError::ZeroK);
    }
    if n < k + 1 {
        return Err(GenError::TooFewVertices { n, k });
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for v in 1..=k {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    let mut bags = vec![VertexSet::full(k + 1)];
    let mut tree: Vec<(Node, Node)> = Vec::new();
    // each k-clique with the node whose bag holds it
    let mut cliques: Vec<(VertexSet, Node)> =
        VertexSet::full(k + 1).subsets_of_size(k).into_iter().map(|q| (q, 0)).collect();
    for v in k + 1..n {
        let (q, owner) = cliques[rng.gen_range(0..cliques.len())];
        edges.extend(q.iter().map(|u| (u, v)));
        bags.push(q.with(v));
        let node = bags.len() - 1;
        tree.push((owner, node));
        cliques.extend(q.iter().map(|x| (q.without(x).with(v), node)));
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::from_edges(n, &edges).expect("k-tree edges are simple").relabel(&perm);
    let bags = bags.iter().map(|b| b.iter().map(|v| perm[v]).collect()).collect();
    let td = TreeDecomposition::new(bags, tree).expect("node ids in range").claim_full();
    Ok((g, td))
}

/// A spanning subgraph of a random k-tree. Edges are visited in random order and
/// deleted with the policy's probability; when 2-connectivity is required,
/// deletions that would break it are skipped.
pub fn generate_partial_k_tree(spec: &GenSpec) -> Result<Graph, GenError> {
    let p = spec.deletion.probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.deletion.max_retries.max(1) {
        let (mut g, _) = k_tree(spec.n, spec.k, &mut rng)?;
        if spec.require_biconnected && !g.is_biconnected() {
            continue;
        }
        let mut order: Vec<(Vertex, Vertex)> = g.edges().to_vec();
        order.shuffle(&mut rng);
        for (u, v) in order {
            if !rng.gen_bool(p) {
                continue;
            }
            let h = g.without_edge(u, v);
            if !spec.require_biconnected || h.is_biconnected() {
                g = h;
            }
        }
        return Ok(g);
    }
    Err(GenError::RetriesExhausted(spec.deletion.max_retries.max(1)))
}

/// Every k-tree on at most `n_max` vertices and every 2-connected spanning
/// subgraph of one, up to isomorphism, in canonical labelling. Sorted by order,
/// then by canonical graph6 string.
pub fn exhaustive_small(n_max: usize, k: usize) -> Result<Vec<Graph>, GenError> {
    use std::collections::{BTreeMap, BTreeSet};

    if n_max > EXHAUSTIVE_MAX_N {
        return Err(GenError::CapExceeded(n_max));
    }
    if k == 0 {
        return Err(GenError::ZeroK);
    }
    if n_max < k + 1 {
        return Err(GenError::TooFewVertices { n: n_max, k });
    }
    let mut out: BTreeMap<(usize, String), Graph> = BTreeMap::new();
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let (g0, s0) = canonical_form(&Graph::complete(k + 1).expect("small"));
    level.insert(s0, g0);
    for n in k + 1..=n_max {
        if n > k + 1 {
            let mut next = BTreeMap::new();
            for g in level.values() {
                for q in k_cliques(g, k) {
                    let mut edges = g.edges().to_vec();
                    edges.extend(q.iter().map(|u| (u, n - 1)));
                    let (c, s) = canonical_form(&Graph::from_edges(n, &edges).expect("simple"));
                    next.entry(s).or_insert(c);
                }
            }
            level = next;
        }
        // spanning subgraphs, one deleted edge at a time, kept while 2-connected
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut frontier: Vec<(String, Graph)> = Vec::new();
        for (s, g) in &level {
            if g.is_biconnected() && seen.insert(s.clone()) {
                frontier.push((s.clone(), g.clone()));
            }
        }
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for (s, g) in frontier {
                for &(u, v) in g.edges() {
                    let h = g.without_edge(u, v);
                    if !h.is_biconnected() {
                        continue;
                    }
                    let (c, cs) = canonical_form(&h);
                    if seen.insert(cs.clone()) {
                        fresh.push((cs, c));
                    }
                }
                out.insert((n, s), g);
            }
            frontier = fresh;
        }
    }
    Ok(out.into_values().collect())
}

fn k_cliques(g: &Graph, k: usize) -> Vec<VertexSet> {
    g.vertices()
        .subsets_of_size(k)
        .into_iter()
        .filter(|q| q.iter().all(|u| q.without(u).is_subset(g.neighbors(u))))
        .collect()
}

/// `G(n, p)` samples until one is 2-connected.
pub fn random_biconnected_graph(n: usize, p: f64, rng: &mut ChaCha8Rng, max_attempts: u32) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability(p));
    }
    for _ in 0..max_attempts {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).expect("simple");
        if g.is_biconnected() {
            return Ok(g);
        }
    }
    Err(GenError::RetriesExhausted(max_attempts))
}
