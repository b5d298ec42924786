use crate::bitset::BitSet;
use crate::model::BlockedGraph;

use super::{Mode, PredicateReport, Witness};

/// `N(S)`: vertices outside `S` adjacent to some vertex of `S`, sorted.
pub fn neighborhood(graph: &BlockedGraph, set: &[usize]) -> Vec<usize> {
    neighborhood_bits(graph, set).iter().collect()
}

pub(crate) fn neighborhood_bits(graph: &BlockedGraph, set: &[usize]) -> BitSet {
    let n = graph.n();
    let inside = BitSet::from_members(n, set.iter().copied());
    let mut out = BitSet::new(n);
    for &v in set {
        for &w in graph.neighbors(v) {
            if !inside.contains(w) {
                out.insert(w);
            }
        }
    }
    out
}

/// Number of vertices of degree at most one.
pub fn n1(graph: &BlockedGraph) -> usize {
    (0..graph.n()).filter(|&v| graph.degree(v) <= 1).count()
}

/// Minimum degree at least two; the witness is the first vertex below it.
pub fn check_d2(graph: &BlockedGraph) -> PredicateReport {
    match (0..graph.n()).find(|&v| graph.degree(v) < 2) {
        Some(v) => PredicateReport::fail("d2", Mode::Exhaustive, Witness::Vertex { vertex: v }),
        None => PredicateReport::pass("d2", Mode::Exhaustive),
    }
}

/// Smallest component of `graph` when it has more than one.
pub(crate) fn split_component(graph: &BlockedGraph) -> Option<Vec<usize>> {
    let (label, count) = graph.components();
    if count <= 1 {
        return None;
    }
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    let smallest = (0..count).min_by_key(|&c| sizes[c]).expect("count > 1");
    Some((0..graph.n()).filter(|&v| label[v] == smallest).collect())
}

pub fn check_connected(graph: &BlockedGraph) -> PredicateReport {
    match split_component(graph) {
        Some(component) => PredicateReport::fail(
            "cnt",
            Mode::Exhaustive,
            Witness::Disconnected { removed: Vec::new(), component },
        ),
        None => PredicateReport::pass("cnt", Mode::Exhaustive),
    }
}
