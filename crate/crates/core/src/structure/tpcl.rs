use std::str::FromStr;

use crate::model::{BlockedGraph, ModelParams};

use super::sexpn::{check_sexpn, check_ssexpn, RemovalBudget, SexpnConfig};
use super::{CompositeReport, Mode, PredicateReport, Witness};

/// Which backing clauses apply.
///
/// `Case1` is T1–T4, `Case2` adds T5, `Case3` swaps T1 for per-block SSEXPN.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpclVariant {
    Case1,
    Case2,
    Case3,
}

impl FromStr for TpclVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "case1" | "1" => Ok(Self::Case1),
            "case2" | "2" => Ok(Self::Case2),
            "case3" | "3" => Ok(Self::Case3),
            other => Err(format!("unknown tpcl variant {other:?}")),
        }
    }
}

/// Which edge classes T3 constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct T3Classes {
    pub block: bool,
    pub crossing: bool,
}

impl T3Classes {
    /// A probability counts as `o(ln n / n)` when `prob * n < ln n / 2`.
    pub fn from_params(params: &ModelParams) -> Self {
        let n = params.n() as f64;
        let small = |x: f64| x * n < n.ln() / 2.0;
        Self { block: small(params.p), crossing: small(params.q) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TpclConfig {
    pub variant: TpclVariant,
    pub sexpn: SexpnConfig,
    pub t3: T3Classes,
    /// Maximum degree limit is `c_max * ln n`.
    pub c_max: f64,
    /// Vertices left out of the block subgraphs for T1′.
    pub drop: Vec<usize>,
}

impl TpclConfig {
    pub fn new(variant: TpclVariant) -> Self {
        Self { variant, sexpn: SexpnConfig::default(), t3: T3Classes::default(), c_max: 10.0, drop: Vec::new() }
    }
}

fn ln(n: usize) -> f64 {
    (n as f64).ln()
}

/// At most `n^0.4` small vertices.
pub fn check_t2(graph: &BlockedGraph) -> PredicateReport {
    let n = graph.n();
    let budget = RemovalBudget::for_n(n);
    let small: Vec<usize> = (0..n).filter(|&v| budget.is_small(graph.degree(v))).collect();
    if small.len() as f64 > (n as f64).powf(0.4) {
        PredicateReport::fail("t2", Mode::Exhaustive, Witness::Vertices { vertices: small })
    } else {
        PredicateReport::pass("t2", Mode::Exhaustive)
    }
}

/// Per-vertex class degree at most `ln n / 200` for the selected classes.
pub fn check_t3(graph: &BlockedGraph, classes: T3Classes) -> PredicateReport {
    let limit = ln(graph.n()) / 200.0;
    for v in 0..graph.n() {
        let (block, crossing) = graph.class_degrees(v);
        let over = (classes.block && block as f64 > limit) || (classes.crossing && crossing as f64 > limit);
        if over {
            return PredicateReport::fail("t3", Mode::Exhaustive, Witness::Vertex { vertex: v });
        }
    }
    PredicateReport::pass("t3", Mode::Exhaustive)
}

/// Maximum degree at most `c_max ln n`.
pub fn check_t4(graph: &BlockedGraph, c_max: f64) -> PredicateReport {
    let limit = c_max * ln(graph.n());
    match (0..graph.n()).find(|&v| graph.degree(v) as f64 > limit) {
        Some(v) => PredicateReport::fail("t4", Mode::Exhaustive, Witness::Vertex { vertex: v }),
        None => PredicateReport::pass("t4", Mode::Exhaustive),
    }
}

/// Fewer than `ln n` vertices with fewer than two crossing edges.
pub fn check_t5(graph: &BlockedGraph) -> PredicateReport {
    let poor: Vec<usize> = (0..graph.n()).filter(|&v| graph.class_degrees(v).1 < 2).collect();
    if poor.len() as f64 >= ln(graph.n()) {
        PredicateReport::fail("t5", Mode::Exhaustive, Witness::Vertices { vertices: poor })
    } else {
        PredicateReport::pass("t5", Mode::Exhaustive)
    }
}

/// SSEXPN for the subgraph induced by every block minus `drop`. Witness
/// vertices are reported in global labels.
pub fn check_t1_blocks(graph: &BlockedGraph, cfg: &SexpnConfig, drop: &[usize]) -> PredicateReport {
    let part = graph.partition();
    let mut mode = Mode::Exhaustive;
    let mut dropped = vec![false; graph.n()];
    for &v in drop {
        dropped[v] = true;
    }
    for b in 0..part.k() {
        let members: Vec<usize> = part.range(b).filter(|&v| !dropped[v]).collect();
        let (h, map) = graph.induced_subgraph(&members);
        let r = if h.n() < 2 {
            PredicateReport::pass("ssexpn", Mode::Exhaustive)
        } else {
            check_ssexpn(&h, cfg)
        };
        if let Mode::Sampled { .. } = r.mode {
            mode = r.mode;
        }
        if let Some(w) = r.witness {
            return PredicateReport::fail("t1'", mode, relabel(w, &map));
        }
    }
    PredicateReport::pass("t1'", mode)
}

fn relabel(w: Witness, map: &[usize]) -> Witness {
    let g = |v: Vec<usize>| v.into_iter().map(|x| map[x]).collect::<Vec<_>>();
    let gp = |v: Vec<(usize, usize)>| v.into_iter().map(|(a, b)| (map[a], map[b])).collect::<Vec<_>>();
    match w {
        Witness::Vertex { vertex } => Witness::Vertex { vertex: map[vertex] },
        Witness::Vertices { vertices } => Witness::Vertices { vertices: g(vertices) },
        Witness::Path { vertices } => Witness::Path { vertices: g(vertices) },
        Witness::Expansion { removed, excluded, set, neighborhood } => Witness::Expansion {
            removed: gp(removed),
            excluded: g(excluded),
            set: g(set),
            neighborhood: g(neighborhood),
        },
        Witness::Disconnected { removed, component } => {
            Witness::Disconnected { removed: gp(removed), component: g(component) }
        }
        Witness::Block { block, vertices } => Witness::Block { block, vertices: g(vertices) },
        Witness::Star { vertex, edges } => Witness::Star { vertex: map[vertex], edges: gp(edges) },
        Witness::Dense { set, edges } => Witness::Dense { set: g(set), edges },
    }
}

pub fn check_tpcl(graph: &BlockedGraph, cfg: &TpclConfig) -> CompositeReport {
    let t1 = match cfg.variant {
        TpclVariant::Case3 => check_t1_blocks(graph, &cfg.sexpn, &cfg.drop),
        _ => {
            let mut r = check_sexpn(graph, &cfg.sexpn);
            r.predicate = "t1".into();
            r
        }
    };
    let mut clauses = vec![t1, check_t2(graph), check_t3(graph, cfg.t3), check_t4(graph, cfg.c_max)];
    if cfg.variant == TpclVariant::Case2 {
        clauses.push(check_t5(graph));
    }
    CompositeReport::new("tpcl", clauses, Vec::new())
}
