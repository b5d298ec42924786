//! Multi-round exposure couplings.
//!
//! Each construction produces a base graph `G_b` and a final graph `G` with
//! `E(G_b) ⊆ E(G)`, where `G` has exactly the law of `G(n, p, q)` (the
//! three-stage construction matches it on crossing pairs). Base edges are
//! blue; later rounds are yellow and red.

mod schedule;

pub use schedule::{ExposureSchedule, Variant};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{for_each_random_pair, generate_with_rng, BlockedGraph, ModelParams};
use crate::rng::rng_from_seed;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExposureError {
    #[error("{name} = {value} is negative; the sprinkling probability exceeds the target")]
    Infeasible { name: &'static str, value: f64 },
    #[error("exposure constant a = {0} must be finite and nonnegative")]
    BadConstant(f64),
    #[error("sprinkling probability {0} must lie in [0, 1)")]
    BadBar(f64),
    #[error("schedule variant {found:?} cannot drive {wanted}")]
    WrongVariant { found: Variant, wanted: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    Blue,
    Yellow,
    Red,
}

/// A coupled pair `(G_b, G)` with the rounds that separate them.
#[derive(Clone, Debug, PartialEq)]
pub struct ExposedPair {
    pub base: BlockedGraph,
    /// `G_y`, present only for the three-stage construction.
    pub middle: Option<BlockedGraph>,
    pub final_graph: BlockedGraph,
    /// Edges added in the yellow round, sorted.
    pub yellow: Vec<(usize, usize)>,
    /// Edges added in the last round, sorted.
    pub red: Vec<(usize, usize)>,
}

impl ExposedPair {
    fn assemble(
        base: BlockedGraph,
        mut yellow: Vec<(usize, usize)>,
        mut red: Vec<(usize, usize)>,
        keep_middle: bool,
    ) -> Self {
        yellow.sort_unstable();
        red.sort_unstable();
        let middle = base.with_added_edges(yellow.iter().copied());
        let final_graph = middle.with_added_edges(red.iter().copied());
        Self { base, middle: keep_middle.then_some(middle), final_graph, yellow, red }
    }

    /// Pair with no later rounds: `G = G_b`.
    pub fn trivial(graph: BlockedGraph) -> Self {
        Self::assemble(graph, Vec::new(), Vec::new(), false)
    }

    /// Pair from an explicit base and final graph; every final edge missing
    /// from the base is red. Returns `None` unless `E(base) ⊆ E(final)`.
    pub fn from_graphs(base: BlockedGraph, final_graph: BlockedGraph) -> Option<Self> {
        if base.partition() != final_graph.partition()
            || base.edges().any(|(u, v)| !final_graph.has_edge(u, v))
        {
            return None;
        }
        let red: Vec<_> = final_graph.edges().filter(|&(u, v)| !base.has_edge(u, v)).collect();
        Some(Self { base, middle: None, final_graph, yellow: Vec::new(), red })
    }

    /// Colour of an edge of the final graph, or `None` for a non-edge.
    pub fn color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        let e = (u.min(v), u.max(v));
        if self.base.has_edge(u, v) {
            Some(EdgeColor::Blue)
        } else if self.yellow.binary_search(&e).is_ok() {
            Some(EdgeColor::Yellow)
        } else if self.red.binary_search(&e).is_ok() {
            Some(EdgeColor::Red)
        } else {
            None
        }
    }

    /// `F = E(G) \ E(G_b)`.
    pub fn added(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.yellow.iter().chain(&self.red).copied()
    }
}

/// Pairs of the given classes that are not yet edges of `graph`, each
/// included with its class probability.
fn sprinkle<R: Rng + ?Sized>(
    graph: &BlockedGraph,
    p_block: f64,
    p_cross: f64,
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    // Sampling every pair and dropping existing edges gives each non-edge
    // exactly the target probability.
    for_each_random_pair(graph.partition(), p_block, p_cross, rng, |u, v| {
        if !graph.has_edge(u, v) {
            out.push((u, v));
        }
    });
    out
}

fn stage_params(s: &ExposureSchedule, p: f64, q: f64) -> ModelParams {
    ModelParams { partition: s.params.partition.clone(), p, q }
}

fn require(s: &ExposureSchedule, variant: Variant, wanted: &'static str) -> Result<(), ExposureError> {
    if s.variant == variant {
        Ok(())
    } else {
        Err(ExposureError::WrongVariant { found: s.variant, wanted })
    }
}

/// `G_b ~ G(n, p1, q1)`, then each non-edge added with probability `p̄`.
pub fn two_stage_generate(s: &ExposureSchedule, seed: u64) -> Result<ExposedPair, ExposureError> {
    require(s, Variant::TwoStage, "two-stage exposure")?;
    let mut rng = rng_from_seed(seed);
    let base = generate_with_rng(&stage_params(s, s.p1, s.q1), &mut rng);
    let red = sprinkle(&base, s.p_bar, s.p_bar, &mut rng);
    Ok(ExposedPair::assemble(base, Vec::new(), red, false))
}

/// Three-stage exposure for sparse block edges.
///
/// `Ĝ ~ G(n, 0, q1)`; each block pair incident to a vertex of `Ĝ`-degree at
/// most one is exposed with probability `p` (pairs scanned once, by lower
/// index first); then crossing non-edges are added with probability `q̄`
/// twice, yellow and then red.
pub fn three_stage_generate(s: &ExposureSchedule, seed: u64) -> Result<ExposedPair, ExposureError> {
    require(s, Variant::ThreeStage, "three-stage exposure")?;
    let mut rng = rng_from_seed(seed);
    let hat = generate_with_rng(&stage_params(s, 0.0, s.q1), &mut rng);
    let low: Vec<bool> = (0..hat.n()).map(|v| hat.degree(v) <= 1).collect();
    let part = hat.partition().clone();
    let mut block_edges = Vec::new();
    if s.params.p > 0.0 {
        for u in (0..hat.n()).filter(|&u| low[u]) {
            for v in part.range(part.block_of(u)) {
                // A pair with two low ends is sampled when its smaller end is visited.
                if v == u || (low[v] && v < u) {
                    continue;
                }
                if rng.random_bool(s.params.p) {
                    block_edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    let mut edges = hat.edge_vec();
    edges.extend(block_edges);
    let base = BlockedGraph::from_unique_edges(part, &edges);
    let yellow = sprinkle(&base, 0.0, s.q_bar, &mut rng);
    let middle = base.with_added_edges(yellow.iter().copied());
    let red = sprinkle(&middle, 0.0, s.q_bar, &mut rng);
    Ok(ExposedPair::assemble(base, yellow, red, true))
}

/// `G_b ~ G(n, p1, q)`, then block non-edges added with probability `p̄`.
pub fn case3_generate(s: &ExposureSchedule, seed: u64) -> Result<ExposedPair, ExposureError> {
    require(s, Variant::Case3, "case-3 exposure")?;
    let mut rng = rng_from_seed(seed);
    let base = generate_with_rng(&stage_params(s, s.p1, s.params.q), &mut rng);
    let red = sprinkle(&base, s.p_bar, 0.0, &mut rng);
    Ok(ExposedPair::assemble(base, Vec::new(), red, false))
}

/// Dispatches on the schedule variant.
pub fn generate_pair(s: &ExposureSchedule, seed: u64) -> ExposedPair {
    match s.variant {
        Variant::TwoStage => two_stage_generate(s, seed),
        Variant::ThreeStage => three_stage_generate(s, seed),
        Variant::Case3 => case3_generate(s, seed),
    }
    .expect("variant matches")
}

/// Reverse construction: deletes each block edge of `final_graph` with
/// probability `p*` and each crossing edge with `q*`. The survivors form the
/// base; the deleted edges are red.
pub fn reverse_two_stage(final_graph: &BlockedGraph, s: &ExposureSchedule, seed: u64) -> ExposedPair {
    let mut rng = rng_from_seed(seed);
    let mut kept = Vec::new();
    let mut red = Vec::new();
    for (u, v) in final_graph.edges() {
        let r = if final_graph.partition().same_block(u, v) { s.p_star } else { s.q_star };
        if r > 0.0 && rng.random_bool(r.min(1.0)) {
            red.push((u, v));
        } else {
            kept.push((u, v));
        }
    }
    let base = BlockedGraph::from_unique_edges(final_graph.partition().clone(), &kept);
    ExposedPair { base, middle: None, final_graph: final_graph.clone(), yellow: Vec::new(), red }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BlockPartition;

    fn params(sizes: &[usize], p: f64, q: f64) -> ModelParams {
        ModelParams::new(BlockPartition::new(sizes.to_vec()).unwrap(), p, q).unwrap()
    }

    fn assert_nested(pair: &ExposedPair) {
        for (u, v) in pair.base.edges() {
            assert!(pair.final_graph.has_edge(u, v));
        }
        let blue = pair.base.edge_count();
        assert_eq!(blue + pair.yellow.len() + pair.red.len(), pair.final_graph.edge_count());
        for (u, v) in pair.final_graph.edges() {
            assert!(pair.color(u, v).is_some());
        }
    }

    #[test]
    fn two_stage_without_sprinkle_is_static() {
        let s = ExposureSchedule::from_bar(Variant::TwoStage, params(&[20, 20], 0.2, 0.1), 0.0)
            .unwrap();
        let pair = two_stage_generate(&s, 1).unwrap();
        assert_eq!(pair.base, pair.final_graph);
    }

    #[test]
    fn every_variant_nests_and_colours() {
        let pr = params(&[40, 40], 0.2, 0.1);
        for v in [Variant::TwoStage, Variant::ThreeStage, Variant::Case3] {
            let s = ExposureSchedule::from_bar(v, pr.clone(), 0.05).unwrap();
            for seed in 0..5 {
                let pair = generate_pair(&s, seed);
                assert_nested(&pair);
                assert_eq!(pair, generate_pair(&s, seed));
            }
        }
    }

    #[test]
    fn three_stage_block_edges_touch_low_vertices() {
        let s = ExposureSchedule::new(Variant::ThreeStage, params(&[60, 60], 0.3, 0.02), 1.0)
            .unwrap();
        let pair = three_stage_generate(&s, 9).unwrap();
        assert!(pair.middle.is_some());
        let crossing_deg = |v: usize| pair.base.class_degrees(v).1;
        for (u, v) in pair.base.edges() {
            if pair.base.partition().same_block(u, v) {
                assert!(crossing_deg(u) <= 1 || crossing_deg(v) <= 1);
            }
        }
        assert!(pair.yellow.iter().chain(&pair.red).all(|&(u, v)| !pair.base.partition().same_block(u, v)));
    }

    #[test]
    fn three_stage_without_sprinkle_keeps_crossing_edges() {
        let s = ExposureSchedule::from_bar(Variant::ThreeStage, params(&[30, 30], 0.1, 0.1), 0.0)
            .unwrap();
        let pair = three_stage_generate(&s, 4).unwrap();
        assert!(pair.yellow.is_empty() && pair.red.is_empty());
    }

    #[test]
    fn case3_adds_only_block_edges() {
        let s = ExposureSchedule::from_bar(Variant::Case3, params(&[30, 30], 0.3, 0.05), 0.1)
            .unwrap();
        let pair = case3_generate(&s, 2).unwrap();
        assert!(pair.red.iter().all(|&(u, v)| pair.base.partition().same_block(u, v)));
    }

    #[test]
    fn reverse_with_zero_deletion_is_identity() {
        let s = ExposureSchedule::from_bar(Variant::TwoStage, params(&[10, 10], 0.5, 0.5), 0.0)
            .unwrap();
        let g = crate::model::generate(&s.params, 3);
        let pair = reverse_two_stage(&g, &s, 3);
        assert_eq!(pair.base, g);
    }

    #[test]
    fn reverse_with_certain_deletion_empties() {
        let mut s = ExposureSchedule::from_bar(Variant::TwoStage, params(&[2], 0.5, 0.5), 0.0)
            .unwrap();
        s.p_star = 1.0;
        let g = BlockedGraph::single_block(2, [(0, 1)]).unwrap();
        let pair = reverse_two_stage(&g, &s, 0);
        assert_eq!(pair.base.edge_count(), 0);
        assert_eq!(pair.red, vec![(0, 1)]);
    }

    #[test]
    fn wrong_variant_is_reported() {
        let s = ExposureSchedule::from_bar(Variant::Case3, params(&[10, 10], 0.5, 0.5), 0.0)
            .unwrap();
        assert!(two_stage_generate(&s, 0).is_err());
    }
}
