use rand::seq::index;
use rand::Rng;

use crate::bitset::BitSet;
use crate::model::BlockedGraph;
use crate::rng::{rng_from_seed, stream_seed};

use super::basic::{n1, neighborhood};
use super::{Mode, PredicateReport, StructureError, Witness};

/// Settings for the expansion checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpnConfig {
    /// Sets of size up to `floor(epsilon0 * n)` are examined.
    pub epsilon0: f64,
    /// Uniform random sets drawn after the adversarial ones.
    pub samples: usize,
    /// Exhaustive enumeration when the number of candidate sets is at most this.
    pub exhaustive_cap: f64,
    /// Lowest-degree vertices used to seed greedy and ball sets.
    pub adversarial_seeds: usize,
    pub seed: u64,
}

impl Default for ExpnConfig {
    fn default() -> Self {
        Self { epsilon0: 0.01, samples: 10_000, exhaustive_cap: 1e6, adversarial_seeds: 32, seed: 0 }
    }
}

impl ExpnConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        if !(self.epsilon0 > 0.0 && self.epsilon0 <= 1.0) {
            return Err(StructureError::BadEpsilon0(self.epsilon0));
        }
        Ok(())
    }

    pub fn max_set(&self, n: usize) -> usize {
        ((self.epsilon0 * n as f64).floor() as usize).min(n)
    }
}

/// `sum_{s=1}^{m} C(n, s)`, saturating in floating point.
pub(crate) fn subsets_up_to(n: usize, m: usize) -> f64 {
    let mut total = 0.0;
    let mut term = 1.0;
    for s in 1..=m {
        term = term * (n + 1 - s) as f64 / s as f64;
        total += term;
        if !total.is_finite() {
            return f64::INFINITY;
        }
    }
    total
}

/// Calls `visit` on every `s`-subset of `0..n` in lexicographic order until
/// it returns `false`. Returns whether enumeration ran to completion.
pub(crate) fn for_each_subset(n: usize, s: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if s > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - s + i {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct Tester<'a> {
    graph: &'a BlockedGraph,
    excluded: BitSet,
    excluded_list: Vec<usize>,
}

impl Tester<'_> {
    /// `Some(witness)` when `set` fails to expand.
    fn test(&self, set: &[usize]) -> Option<Witness> {
        let nb: Vec<usize> =
            neighborhood(self.graph, set).into_iter().filter(|&w| !self.excluded.contains(w)).collect();
        if nb.len() >= 2 * set.len() {
            return None;
        }
        let mut set = set.to_vec();
        set.sort_unstable();
        Some(Witness::Expansion {
            removed: Vec::new(),
            excluded: self.excluded_list.clone(),
            set,
            neighborhood: nb,
        })
    }

    /// Greedy growth from `start`: repeatedly add the nearby vertex that
    /// keeps `|N(S) \ V|` smallest, testing every prefix.
    fn greedy(&self, start: usize, m: usize) -> Option<Witness> {
        const POOL_CAP: usize = 256;
        let g = self.graph;
        let n = g.n();
        let mut in_set = BitSet::new(n);
        let mut nb = BitSet::new(n);
        let mut pool = Vec::new();
        let mut in_pool = BitSet::new(n);
        let mut set = Vec::new();
        let mut count = 0usize;
        let add = |w: usize,
                       set: &mut Vec<usize>,
                       in_set: &mut BitSet,
                       nb: &mut BitSet,
                       pool: &mut Vec<usize>,
                       in_pool: &mut BitSet,
                       count: &mut usize| {
            if nb.contains(w) {
                nb.remove(w);
                if !self.excluded.contains(w) {
                    *count -= 1;
                }
            }
            in_set.insert(w);
            set.push(w);
            for &x in g.neighbors(w) {
                if !in_set.contains(x) && nb.insert(x) && !self.excluded.contains(x) {
                    *count += 1;
                }
            }
            for &x in g.neighbors(w) {
                for &y in std::iter::once(&x).chain(g.neighbors(x)) {
                    if pool.len() < POOL_CAP && !in_pool.contains(y) {
                        in_pool.insert(y);
                        pool.push(y);
                    }
                }
            }
        };
        add(start, &mut set, &mut in_set, &mut nb, &mut pool, &mut in_pool, &mut count);
        loop {
            if count < 2 * set.len() {
                return self.test(&set);
            }
            if set.len() >= m {
                return None;
            }
            let mut best: Option<(usize, usize)> = None;
            for &w in &pool {
                if in_set.contains(w) {
                    continue;
                }
                let mut c = count;
                if nb.contains(w) && !self.excluded.contains(w) {
                    c -= 1;
                }
                for &x in g.neighbors(w) {
                    if !in_set.contains(x) && !nb.contains(x) && !self.excluded.contains(x) {
                        c += 1;
                    }
                }
                if best.is_none_or(|(bc, _)| c < bc) {
                    best = Some((c, w));
                }
            }
            let Some((_, w)) = best else { return None };
            add(w, &mut set, &mut in_set, &mut nb, &mut pool, &mut in_pool, &mut count);
        }
    }
}

/// Closed ball of radius `r` around `v`, or `None` once it exceeds `cap`.
fn ball(graph: &BlockedGraph, v: usize, r: usize, cap: usize) -> Option<Vec<usize>> {
    let mut seen = BitSet::new(graph.n());
    seen.insert(v);
    let mut out = vec![v];
    let mut frontier = vec![v];
    for _ in 0..r {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in graph.neighbors(u) {
                if seen.insert(w) {
                    next.push(w);
                    out.push(w);
                    if out.len() > cap {
                        return None;
                    }
                }
            }
        }
        frontier = next;
    }
    Some(out)
}

pub(crate) fn lowest_degree(graph: &BlockedGraph, count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.sort_by_key(|&v| (graph.degree(v), v));
    order.truncate(count);
    order
}

/// EXPN: every `S` with `|S| <= epsilon0 n` has `|N(S)| >= 2|S|`, vacuous
/// when some vertex has degree at most one.
pub fn check_expn(graph: &BlockedGraph, cfg: &ExpnConfig) -> PredicateReport {
    expansion(graph, cfg, &[], "expn")
}

/// EXPN⁺: as [`check_expn`] but neighbours in `excluded` do not count.
pub fn check_expn_plus(graph: &BlockedGraph, cfg: &ExpnConfig, excluded: &[usize]) -> PredicateReport {
    expansion(graph, cfg, excluded, "expn+")
}

fn expansion(graph: &BlockedGraph, cfg: &ExpnConfig, excluded: &[usize], name: &str) -> PredicateReport {
    let n = graph.n();
    let m = cfg.max_set(n);
    let mut excluded_list = excluded.to_vec();
    excluded_list.sort_unstable();
    excluded_list.dedup();
    let tester = Tester {
        graph,
        excluded: BitSet::from_members(n, excluded_list.iter().copied()),
        excluded_list,
    };
    if subsets_up_to(n, m) <= cfg.exhaustive_cap {
        if n1(graph) > 0 {
            return PredicateReport::pass(name, Mode::Exhaustive);
        }
        for s in 1..=m {
            let mut found = None;
            for_each_subset(n, s, |set| {
                found = tester.test(set);
                found.is_none()
            });
            if let Some(w) = found {
                return PredicateReport::fail(name, Mode::Exhaustive, w);
            }
        }
        return PredicateReport::pass(name, Mode::Exhaustive);
    }
    let mode = Mode::Sampled { samples: cfg.samples };
    if n1(graph) > 0 {
        return PredicateReport::pass(name, mode);
    }
    if let Some(w) = search(&tester, cfg, m) {
        return PredicateReport::fail(name, mode, w);
    }
    PredicateReport::pass(name, mode)
}

/// Adversarial sets first, then uniform ones; the order is fixed so a
/// larger sample count only appends candidates.
fn search(tester: &Tester<'_>, cfg: &ExpnConfig, m: usize) -> Option<Witness> {
    let graph = tester.graph;
    let n = graph.n();
    for v in 0..n {
        if let Some(w) = tester.test(&[v]) {
            return Some(w);
        }
    }
    for v in lowest_degree(graph, cfg.adversarial_seeds) {
        for r in 1..=2 {
            if let Some(b) = ball(graph, v, r, m) {
                if let Some(w) = tester.test(&b) {
                    return Some(w);
                }
            }
        }
        if let Some(w) = tester.greedy(v, m) {
            return Some(w);
        }
    }
    let mut rng = rng_from_seed(stream_seed(cfg.seed, 0x5e7));
    for _ in 0..cfg.samples {
        let s = rng.random_range(1..=m);
        let set = index::sample(&mut rng, n, s).into_vec();
        if let Some(w) = tester.test(&set) {
            return Some(w);
        }
    }
    None
}
