use std::collections::{BTreeSet, VecDeque};

use rand::seq::index;
use rand::Rng;

use crate::bitset::BitSet;
use crate::model::BlockedGraph;
use crate::rng::{rng_from_seed, stream_seed};

use super::expn::{for_each_subset, subsets_up_to};
use super::{Mode, PredicateReport, StructureError, Witness};

#[derive(Clone, Debug, PartialEq)]
pub struct CConfig {
    /// Density constant of the medium-set bound.
    pub epsilon: f64,
    /// Medium sets have size at most `delta n`.
    pub delta: f64,
    /// Degree below which a vertex counts as extremely small.
    pub low_degree: usize,
    pub max_distance: usize,
    pub max_cycle: usize,
    /// Uniform random sets per density check.
    pub samples: usize,
    /// Seeds for greedy densest growth.
    pub greedy_seeds: usize,
    pub exhaustive_cap: f64,
    pub seed: u64,
}

impl Default for CConfig {
    fn default() -> Self {
        Self {
            epsilon: 1.0 / 24.0,
            delta: 0.05,
            low_degree: 100,
            max_distance: 5,
            max_cycle: 5,
            samples: 2000,
            greedy_seeds: 16,
            exhaustive_cap: 1e6,
            seed: 0,
        }
    }
}

impl CConfig {
    pub fn validate(&self) -> Result<(), StructureError> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(StructureError::BadDelta(self.delta));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(StructureError::BadEpsilon(self.epsilon));
        }
        Ok(())
    }
}

fn ln(n: usize) -> f64 {
    (n as f64).ln()
}

/// Per block, at most `n^0.9` vertices of degree below `ln n / 2`.
pub fn check_c1(graph: &BlockedGraph) -> PredicateReport {
    let n = graph.n();
    let limit = (n as f64).powf(0.9);
    let part = graph.partition();
    for b in 0..part.k() {
        let low: Vec<usize> =
            part.range(b).filter(|&v| (graph.degree(v) as f64) < ln(n) / 2.0).collect();
        if low.len() as f64 > limit {
            return PredicateReport::fail("c1", Mode::Exhaustive, Witness::Block { block: b, vertices: low });
        }
    }
    PredicateReport::pass("c1", Mode::Exhaustive)
}

/// BFS from `src` to depth `depth`; returns depth and parent arrays, with
/// `usize::MAX` for unreached vertices.
fn bfs(graph: &BlockedGraph, src: usize, depth: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = graph.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![src];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if dist[u] == depth {
            continue;
        }
        for &w in graph.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    (dist, parent, order)
}

fn trace(parent: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while parent[v] != usize::MAX {
        v = parent[v];
        out.push(v);
    }
    out
}

/// No two vertices of degree below `low_degree` within distance `max_distance`.
pub fn check_c2(graph: &BlockedGraph, cfg: &CConfig) -> PredicateReport {
    let low = |v: usize| graph.degree(v) < cfg.low_degree;
    for v in (0..graph.n()).filter(|&v| low(v)) {
        let (dist, parent, order) = bfs(graph, v, cfg.max_distance);
        if let Some(&u) = order.iter().find(|&&u| u != v && low(u)) {
            debug_assert!(dist[u] <= cfg.max_distance);
            let mut path = trace(&parent, u);
            path.reverse();
            return PredicateReport::fail("c2", Mode::Exhaustive, Witness::Path { vertices: path });
        }
    }
    PredicateReport::pass("c2", Mode::Exhaustive)
}

/// Shortest cycle through `v` of length at most `max_len`, as a vertex list
/// starting at `v`.
pub(crate) fn short_cycle_through(graph: &BlockedGraph, v: usize, max_len: usize) -> Option<Vec<usize>> {
    if max_len < 3 {
        return None;
    }
    let (dist, parent, order) = bfs(graph, v, max_len - 2);
    let branch = |mut x: usize| {
        while parent[x] != v {
            x = parent[x];
        }
        x
    };
    let mut best: Option<(usize, usize, usize)> = None;
    for &a in order.iter().skip(1) {
        for &b in graph.neighbors(a) {
            if b <= a || b == v || dist[b] == usize::MAX || parent[a] == b || parent[b] == a {
                continue;
            }
            let len = dist[a] + dist[b] + 1;
            if len <= max_len && best.is_none_or(|(l, _, _)| len < l) && branch(a) != branch(b) {
                best = Some((len, a, b));
            }
        }
    }
    let (_, a, b) = best?;
    let mut cycle = trace(&parent, a);
    cycle.reverse();
    let back = trace(&parent, b);
    cycle.extend(back.into_iter().take_while(|&x| x != v));
    Some(cycle)
}

/// No vertex of degree below `low_degree` on a cycle of length at most `max_cycle`.
pub fn check_c3(graph: &BlockedGraph, cfg: &CConfig) -> PredicateReport {
    for v in (0..graph.n()).filter(|&v| graph.degree(v) < cfg.low_degree) {
        if let Some(cycle) = short_cycle_through(graph, v, cfg.max_cycle) {
            return PredicateReport::fail("c3", Mode::Exhaustive, Witness::Path { vertices: cycle });
        }
    }
    PredicateReport::pass("c3", Mode::Exhaustive)
}

/// Number of edges with both ends in `set`.
pub fn induced_edges(graph: &BlockedGraph, set: &[usize]) -> usize {
    let inside = BitSet::from_members(graph.n(), set.iter().copied());
    set.iter().map(|&v| graph.neighbors(v).iter().filter(|&&w| inside.contains(w)).count()).sum::<usize>()
        / 2
}

/// Searches sets with size in `lo..=hi` for one where `bad(size, edges)`.
fn density_search(
    graph: &BlockedGraph,
    cfg: &CConfig,
    lo: usize,
    hi: usize,
    stream: u64,
    bad: impl Fn(usize, usize) -> bool,
) -> (Mode, Option<Witness>) {
    let n = graph.n();
    let hi = hi.min(n);
    if lo > hi {
        return (Mode::Exhaustive, None);
    }
    let dense = |set: &[usize], edges: usize| {
        let mut set = set.to_vec();
        set.sort_unstable();
        Witness::Dense { set, edges }
    };
    if subsets_up_to(n, hi) <= cfg.exhaustive_cap {
        let mut found = None;
        for s in lo.max(1)..=hi {
            for_each_subset(n, s, |set| {
                let e = induced_edges(graph, set);
                if bad(s, e) {
                    found = Some(dense(set, e));
                }
                found.is_none()
            });
            if found.is_some() {
                break;
            }
        }
        return (Mode::Exhaustive, found);
    }
    let mode = Mode::Sampled { samples: cfg.samples };

    // peeling: repeatedly drop a minimum-degree vertex
    let mut deg: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut heap: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut edges = graph.edge_count();
    let mut size = n;
    let mut removed = Vec::with_capacity(n);
    let mut peel_hit = None;
    while size >= lo.max(1) {
        if size <= hi && bad(size, edges) {
            peel_hit = Some(size);
            break;
        }
        let &(d, v) = heap.iter().next().expect("size > 0");
        heap.remove(&(d, v));
        alive[v] = false;
        removed.push(v);
        edges -= d;
        size -= 1;
        for &w in graph.neighbors(v) {
            if alive[w] {
                heap.remove(&(deg[w], w));
                deg[w] -= 1;
                heap.insert((deg[w], w));
            }
        }
    }
    if peel_hit.is_some() {
        let set: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let e = induced_edges(graph, &set);
        return (mode, Some(dense(&set, e)));
    }

    // greedy growth from high-degree seeds
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    seeds.truncate(cfg.greedy_seeds);
    for s0 in seeds {
        let mut gain = vec![0usize; n];
        let mut inside = vec![false; n];
        let mut set = Vec::new();
        let mut e = 0;
        let mut next = Some(s0);
        while let Some(v) = next {
            inside[v] = true;
            set.push(v);
            e += gain[v];
            for &w in graph.neighbors(v) {
                gain[w] += 1;
            }
            if set.len() >= lo && bad(set.len(), e) {
                return (mode, Some(dense(&set, e)));
            }
            if set.len() >= hi {
                break;
            }
            next = (0..n).filter(|&w| !inside[w] && gain[w] > 0).max_by_key(|&w| (gain[w], std::cmp::Reverse(w)));
        }
    }

    let mut rng = rng_from_seed(stream_seed(cfg.seed, stream));
    for _ in 0..cfg.samples {
        let s = rng.random_range(lo.max(1)..=hi);
        let set = index::sample(&mut rng, n, s).into_vec();
        let e = induced_edges(graph, &set);
        if bad(s, e) {
            return (mode, Some(dense(&set, e)));
        }
    }
    (mode, None)
}

fn small_set_bound(n: usize) -> f64 {
    n as f64 / ln(n).powi(2)
}

/// Every `S` with `|S| < n / ln^2 n` induces at most `3|S|` edges.
pub fn check_c4(graph: &BlockedGraph, cfg: &CConfig) -> PredicateReport {
    let n = graph.n();
    let bound = small_set_bound(n);
    let hi = if bound <= 1.0 { 0 } else { (bound.ceil() as usize) - 1 };
    let (mode, w) = density_search(graph, cfg, 1, hi, 0xc4, |s, e| e > 3 * s);
    match w {
        Some(w) => PredicateReport::fail("c4", mode, w),
        None => PredicateReport::pass("c4", mode),
    }
}

/// Every `S` with `n / ln^2 n <= |S| <= delta n` induces fewer than
/// `epsilon |S| ln n` edges.
pub fn check_c5(graph: &BlockedGraph, cfg: &CConfig) -> PredicateReport {
    let n = graph.n();
    let lo = small_set_bound(n).ceil().max(1.0) as usize;
    let hi = (cfg.delta * n as f64).floor() as usize;
    let limit = cfg.epsilon * ln(n);
    let (mode, w) = density_search(graph, cfg, lo, hi, 0xc5, |s, e| e as f64 >= limit * s as f64);
    match w {
        Some(w) => PredicateReport::fail("c5", mode, w),
        None => PredicateReport::pass("c5", mode),
    }
}

pub fn check_c_properties(graph: &BlockedGraph, cfg: &CConfig) -> Vec<PredicateReport> {
    vec![check_c1(graph), check_c2(graph, cfg), check_c3(graph, cfg), check_c4(graph, cfg), check_c5(graph, cfg)]
}
