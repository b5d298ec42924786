use std::collections::BTreeMap;

use serde::Serialize;

use crate::model::BlockedGraph;

/// A failed clause of the stitching precondition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lemma6Violation {
    /// Two pairs meet at `vertex`.
    SharedVertex { vertex: usize },
    /// No pair between these blocks.
    MissingPair { blocks: (usize, usize) },
    /// Odd number of pairs leaving `block`.
    OddBlock { block: usize },
    TooManyVertices { count: usize, limit: usize },
    /// `u` and `v` are both paired and both adjacent to `via`.
    SharedNeighbour { u: usize, v: usize, via: usize },
    /// Paired `vertex` is adjacent to `neighbour`, which has degree at most two.
    NearLowDegree { vertex: usize, neighbour: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditConfig {
    /// Paired vertices allowed: `vertex_factor * ln n`.
    pub vertex_factor: f64,
    /// Whether the size and neighbourhood clauses gate the stitch.
    pub enforce_soft: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self { vertex_factor: 4.0, enforce_soft: false }
    }
}

/// Structural clauses (disjointness, positivity, parity) are `hard`; the
/// size and neighbourhood clauses are `soft`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma6Audit {
    pub hard: Vec<Lemma6Violation>,
    pub soft: Vec<Lemma6Violation>,
}

impl Lemma6Audit {
    pub fn passes(&self, enforce_soft: bool) -> bool {
        self.hard.is_empty() && (!enforce_soft || self.soft.is_empty())
    }

    pub fn first(&self, enforce_soft: bool) -> Option<&Lemma6Violation> {
        self.hard.first().or(if enforce_soft { self.soft.first() } else { None })
    }
}

/// Disjointness, positivity and parity of `pairs` over `blocks`.
pub fn hard_clauses(graph: &BlockedGraph, pairs: &[(usize, usize)], blocks: &[usize]) -> Vec<Lemma6Violation> {
    let mut out = Vec::new();
    let mut seen = vec![false; graph.n()];
    for &(u, v) in pairs {
        for x in [u, v] {
            if seen[x] {
                out.push(Lemma6Violation::SharedVertex { vertex: x });
            }
            seen[x] = true;
        }
    }
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut leaving: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in pairs {
        let (a, b) = (graph.block_of(u), graph.block_of(v));
        if a != b {
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
            *leaving.entry(a).or_default() += 1;
            *leaving.entry(b).or_default() += 1;
        }
    }
    for (x, &i) in blocks.iter().enumerate() {
        for &j in &blocks[x + 1..] {
            if !count.contains_key(&(i.min(j), i.max(j))) {
                out.push(Lemma6Violation::MissingPair { blocks: (i.min(j), i.max(j)) });
            }
        }
        if leaving.get(&i).copied().unwrap_or(0) % 2 == 1 {
            out.push(Lemma6Violation::OddBlock { block: i });
        }
    }
    out
}

/// Size and neighbourhood clauses, measured in `graph` over `alive` vertices.
pub fn soft_clauses(
    graph: &BlockedGraph,
    alive: &[bool],
    pairs: &[(usize, usize)],
    cfg: &AuditConfig,
) -> Vec<Lemma6Violation> {
    let mut out = Vec::new();
    let mut ends: Vec<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    ends.sort_unstable();
    ends.dedup();
    let limit = (cfg.vertex_factor * (graph.n() as f64).ln()).floor() as usize;
    if ends.len() > limit {
        out.push(Lemma6Violation::TooManyVertices { count: ends.len(), limit });
    }
    let live_degree = |v: usize| graph.neighbors(v).iter().filter(|&&w| alive[w]).count();
    let mut owner = vec![usize::MAX; graph.n()];
    for &v in &ends {
        for &w in graph.neighbors(v).iter().filter(|&&w| alive[w]) {
            if owner[w] != usize::MAX && owner[w] != v {
                out.push(Lemma6Violation::SharedNeighbour { u: owner[w], v, via: w });
            }
            owner[w] = v;
            if live_degree(w) <= 2 {
                out.push(Lemma6Violation::NearLowDegree { vertex: v, neighbour: w });
            }
        }
    }
    out
}

/// Full audit of `pairs` against the supplanted graph `h_full` (green edges
/// included).
pub fn audit_lemma6(
    h_full: &BlockedGraph,
    alive: &[bool],
    pairs: &[(usize, usize)],
    blocks: &[usize],
    cfg: &AuditConfig,
) -> Lemma6Audit {
    Lemma6Audit { hard: hard_clauses(h_full, pairs, blocks), soft: soft_clauses(h_full, alive, pairs, cfg) }
}
