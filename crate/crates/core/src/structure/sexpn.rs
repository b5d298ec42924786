use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::BitSet;
use crate::model::BlockedGraph;
use crate::rng::{rng_from_seed, stream_seed, StreamRng};

use super::basic::split_component;
use super::expn::{check_expn_plus, lowest_degree, ExpnConfig};
use super::{Mode, PredicateReport, Witness};

/// Per-vertex limit on removed edges: nothing at small vertices, a fixed
/// cap at large ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemovalBudget {
    /// Vertices of degree strictly below this are small.
    pub small_threshold: f64,
    pub large_cap: usize,
}

impl RemovalBudget {
    /// `ln n / 10` and `floor(ln n / 100)`.
    pub fn for_n(n: usize) -> Self {
        let ln = (n as f64).ln();
        Self { small_threshold: ln / 10.0, large_cap: (ln / 100.0).floor() as usize }
    }

    pub fn is_small(&self, degree: usize) -> bool {
        (degree as f64) < self.small_threshold
    }

    pub fn cap(&self, degree: usize) -> usize {
        if self.is_small(degree) {
            0
        } else {
            self.large_cap
        }
    }

    /// Whether `removed` respects the budget in `graph`.
    pub fn admits(&self, graph: &BlockedGraph, removed: &[(usize, usize)]) -> bool {
        let mut used = vec![0usize; graph.n()];
        for &(u, v) in removed {
            used[u] += 1;
            used[v] += 1;
        }
        (0..graph.n()).all(|v| used[v] <= self.cap(graph.degree(v)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SexpnConfig {
    pub expn: ExpnConfig,
    /// Removal sets tried, the empty one included.
    pub f_samples: usize,
    /// Excluded sets tried per removal set (SSEXPN only), the empty one included.
    pub v_samples: usize,
    /// Defaults to [`RemovalBudget::for_n`].
    pub budget: Option<RemovalBudget>,
}

impl Default for SexpnConfig {
    fn default() -> Self {
        Self { expn: ExpnConfig::default(), f_samples: 20, v_samples: 8, budget: None }
    }
}

fn removal_sets(graph: &BlockedGraph, budget: &RemovalBudget, count: usize, rng: &mut StreamRng) -> Vec<Vec<(usize, usize)>> {
    let n = graph.n();
    let caps: Vec<usize> = (0..n).map(|v| budget.cap(graph.degree(v))).collect();
    let mut out = vec![Vec::new()];
    if caps.iter().all(|&c| c == 0) {
        return out;
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut edges = graph.edge_vec();
    for i in 1..count {
        let mut left = caps.clone();
        let mut f = Vec::new();
        if i % 2 == 1 {
            for &v in &by_degree {
                let mut nbrs: Vec<usize> = graph.neighbors(v).to_vec();
                nbrs.shuffle(rng);
                nbrs.sort_by_key(|&w| graph.degree(w));
                for w in nbrs {
                    if left[v] == 0 {
                        break;
                    }
                    if left[w] > 0 && !f.contains(&(v.min(w), v.max(w))) {
                        left[v] -= 1;
                        left[w] -= 1;
                        f.push((v.min(w), v.max(w)));
                    }
                }
            }
        } else {
            edges.shuffle(rng);
            for &(u, v) in &edges {
                if left[u] > 0 && left[v] > 0 && rng.random_bool(0.5) {
                    left[u] -= 1;
                    left[v] -= 1;
                    f.push((u, v));
                }
            }
        }
        f.sort_unstable();
        out.push(f);
    }
    out
}

/// Excluded sets: at most `ln n` vertices, no two with a common neighbour,
/// none adjacent to a vertex of degree at most two.
fn excluded_sets(graph: &BlockedGraph, count: usize, rng: &mut StreamRng) -> Vec<Vec<usize>> {
    let n = graph.n();
    let limit = (n as f64).ln().floor() as usize;
    let eligible: Vec<bool> =
        (0..n).map(|v| graph.neighbors(v).iter().all(|&w| graph.degree(w) > 2)).collect();
    let grow = |order: &mut dyn Iterator<Item = usize>, target: usize| {
        let mut covered = BitSet::new(n);
        let mut set = Vec::new();
        for w in order {
            if set.len() >= target {
                break;
            }
            if !eligible[w] || set.contains(&w) || graph.neighbors(w).iter().any(|&x| covered.contains(x)) {
                continue;
            }
            for &x in graph.neighbors(w) {
                covered.insert(x);
            }
            set.push(w);
        }
        set.sort_unstable();
        set
    };
    let mut out = vec![Vec::new()];
    if limit == 0 {
        return out;
    }
    let low = lowest_degree(graph, n);
    for i in 1..count {
        let set = if i % 2 == 1 {
            // neighbours of the weakest vertices, one per vertex
            let mut order = low.iter().flat_map(|&u| graph.neighbors(u).iter().copied());
            grow(&mut order, limit)
        } else {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let target = rng.random_range(1..=limit);
            grow(&mut perm.into_iter(), target)
        };
        out.push(set);
    }
    out
}

fn with_removed(w: Witness, removed: &[(usize, usize)]) -> Witness {
    match w {
        Witness::Expansion { excluded, set, neighborhood, .. } => {
            Witness::Expansion { removed: removed.to_vec(), excluded, set, neighborhood }
        }
        other => other,
    }
}

fn robust(graph: &BlockedGraph, cfg: &SexpnConfig, strong: bool) -> PredicateReport {
    let name = if strong { "ssexpn" } else { "sexpn" };
    let budget = cfg.budget.unwrap_or_else(|| RemovalBudget::for_n(graph.n()));
    let mut rng = rng_from_seed(stream_seed(cfg.expn.seed, 0xf5e7));
    let fs = removal_sets(graph, &budget, cfg.f_samples.max(1), &mut rng);
    let vs = if strong { excluded_sets(graph, cfg.v_samples.max(1), &mut rng) } else { vec![Vec::new()] };
    let mut mode = if fs.len() == 1 && vs.len() == 1 {
        Mode::Exhaustive
    } else {
        Mode::Sampled { samples: fs.len() * vs.len() }
    };
    for f in &fs {
        let h = if f.is_empty() { graph.clone() } else { graph.without_edges(f.iter().copied()) };
        if let Some(component) = split_component(&h) {
            return PredicateReport::fail(name, mode, Witness::Disconnected { removed: f.clone(), component });
        }
        for v in &vs {
            let r = check_expn_plus(&h, &cfg.expn, v);
            if let Mode::Sampled { samples } = r.mode {
                if mode == Mode::Exhaustive {
                    mode = Mode::Sampled { samples };
                }
            }
            if let Some(w) = r.witness {
                return PredicateReport::fail(name, mode, with_removed(w, f));
            }
        }
    }
    PredicateReport::pass(name, mode)
}

/// SEXPN: `G - F` is connected and expands for every budgeted `F`.
pub fn check_sexpn(graph: &BlockedGraph, cfg: &SexpnConfig) -> PredicateReport {
    robust(graph, cfg, false)
}

/// SSEXPN: as SEXPN, with expansion measured outside every admissible excluded set.
pub fn check_ssexpn(graph: &BlockedGraph, cfg: &SexpnConfig) -> PredicateReport {
    robust(graph, cfg, true)
}
