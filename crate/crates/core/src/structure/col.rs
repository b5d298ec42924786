use std::str::FromStr;

use crate::exposure::ExposedPair;
use crate::solver::{held_karp_hamilton, longest_path_exact, LONGEST_PATH_LIMIT};

use super::sexpn::RemovalBudget;
use super::{CompositeReport, Mode, PredicateReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColVariant {
    /// Clauses (a) and (b).
    Standard,
    /// Added edges leave every vertex of degree at least two with two old edges.
    Col1,
    /// Clause (a) alone.
    Col3,
}

impl FromStr for ColVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" | "col" => Ok(Self::Standard),
            "col1" => Ok(Self::Col1),
            "col3" => Ok(Self::Col3),
            other => Err(format!("unknown col variant {other:?}")),
        }
    }
}

/// Added edges at each vertex.
fn added_at(pair: &ExposedPair) -> Vec<Vec<(usize, usize)>> {
    let mut at = vec![Vec::new(); pair.final_graph.n()];
    for (u, v) in pair.added() {
        at[u].push((u, v));
        at[v].push((u, v));
    }
    at
}

fn star_check(
    name: &str,
    pair: &ExposedPair,
    allowed: impl Fn(usize) -> Option<usize>,
) -> PredicateReport {
    let g = &pair.final_graph;
    for (v, edges) in added_at(pair).into_iter().enumerate() {
        if allowed(g.degree(v)).is_some_and(|cap| edges.len() > cap) {
            return PredicateReport::fail(name, Mode::Exhaustive, Witness::Star { vertex: v, edges });
        }
    }
    PredicateReport::pass(name, Mode::Exhaustive)
}

/// No added edge at a small vertex, at most `ln n / 100` at a large one.
pub fn check_col_a(pair: &ExposedPair, name: &str) -> PredicateReport {
    let n = pair.final_graph.n();
    let budget = RemovalBudget::for_n(n);
    let large = (n as f64).ln() / 100.0;
    star_check(name, pair, |d| Some(if budget.is_small(d) { 0 } else { large.floor() as usize }))
}

/// Longest path is unchanged by the added edges, or the base graph has a
/// Hamilton path and the final graph is still not Hamiltonian.
/// `None` when `n` is beyond the exact oracle.
pub fn check_col_b(pair: &ExposedPair) -> Option<PredicateReport> {
    let n = pair.final_graph.n();
    if n > LONGEST_PATH_LIMIT {
        return None;
    }
    let (base_len, _) = longest_path_exact(&pair.base).ok()?;
    if base_len + 1 < n {
        let (len, path) = longest_path_exact(&pair.final_graph).ok()?;
        if len != base_len {
            return Some(PredicateReport::fail("b", Mode::Exhaustive, Witness::Path { vertices: path }));
        }
    } else if let Some(cycle) = held_karp_hamilton(&pair.final_graph).ok()? {
        return Some(PredicateReport::fail("b", Mode::Exhaustive, Witness::Path { vertices: cycle }));
    }
    Some(PredicateReport::pass("b", Mode::Exhaustive))
}

/// At most `d(v) - 2` added edges at every vertex of degree at least two.
pub fn check_col1(pair: &ExposedPair) -> PredicateReport {
    star_check("col1", pair, |d| (d >= 2).then(|| d - 2))
}

pub fn check_col(pair: &ExposedPair, variant: ColVariant) -> CompositeReport {
    match variant {
        ColVariant::Standard => {
            let a = check_col_a(pair, "a");
            match check_col_b(pair) {
                Some(b) => CompositeReport::new("col", vec![a, b], Vec::new()),
                None => CompositeReport::new("col", vec![a], vec!["b".into()]),
            }
        }
        ColVariant::Col1 => CompositeReport::new("col1", vec![check_col1(pair)], Vec::new()),
        ColVariant::Col3 => CompositeReport::new("col3", vec![check_col_a(pair, "col3")], Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BlockedGraph;

    #[test]
    fn no_added_edges_passes_everything() {
        let g = BlockedGraph::single_block(6, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let pair = ExposedPair::trivial(g);
        for v in [ColVariant::Standard, ColVariant::Col1, ColVariant::Col3] {
            let r = check_col(&pair, v);
            assert!(r.holds && r.unknown.is_empty(), "{v:?}");
        }
    }

    #[test]
    fn red_edge_at_small_vertex_fails_a() {
        let base = BlockedGraph::single_block(6, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let fin = base.with_added_edges([(4, 5)]);
        let pair = ExposedPair::from_graphs(base, fin).unwrap();
        let r = check_col_a(&pair, "a");
        assert_eq!(r.witness, Some(Witness::Star { vertex: 4, edges: vec![(4, 5)] }));
    }

    #[test]
    fn extension_breaks_b() {
        let base = BlockedGraph::single_block(5, [(0, 1), (1, 2)]).unwrap();
        let fin = base.with_added_edges([(2, 3)]);
        let pair = ExposedPair::from_graphs(base, fin).unwrap();
        assert!(!check_col_b(&pair).unwrap().holds);
    }
}
