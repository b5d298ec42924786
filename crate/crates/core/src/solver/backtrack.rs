use super::{overlay_adjacency, ForcedEdgeSet};
use crate::model::BlockedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BacktrackOutcome {
    Cycle(Vec<usize>),
    /// The search space was exhausted: no admissible Hamilton cycle exists.
    None,
    /// The node budget ran out first.
    Timeout,
}

struct Search<'a> {
    adj: Vec<Vec<usize>>,
    forced: &'a ForcedEdgeSet,
    n: usize,
    visited: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Whether `v`, having just been left for `next`, has its forced partner
    /// among its two cycle neighbours.
    fn partner_ok(&self, v: usize, prev: usize, next: usize) -> bool {
        self.forced.partner(v).is_none_or(|f| f == prev || f == next)
    }

    /// Every unvisited vertex still needs two usable neighbours.
    fn prunable(&self) -> bool {
        let start = self.path[0];
        let end = *self.path.last().expect("nonempty path");
        (0..self.n).filter(|&w| !self.visited[w]).any(|w| {
            self.adj[w]
                .iter()
                .filter(|&&x| !self.visited[x] || x == start || x == end)
                .take(2)
                .count()
                < 2
        })
    }

    fn extend(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let v = *self.path.last().expect("nonempty path");
        let start = self.path[0];
        let prev = if self.path.len() > 1 { self.path[self.path.len() - 2] } else { usize::MAX };
        if self.path.len() == self.n {
            let closes = self.adj[v].contains(&start)
                && self.partner_ok(v, prev, start)
                && self.partner_ok(start, self.path[1], v);
            return Some(closes);
        }
        if self.prunable() {
            return Some(false);
        }
        let candidates: Vec<usize> = match self.forced.partner(v) {
            // A pending partner must come next.
            Some(f) if f != prev && !(self.path.len() == 1) => {
                if self.visited[f] {
                    return Some(false);
                }
                vec![f]
            }
            _ => self.adj[v].iter().copied().filter(|&w| !self.visited[w]).collect(),
        };
        for w in candidates {
            if self.path.len() > 1 && !self.partner_ok(v, prev, w) {
                continue;
            }
            // `w` cannot reach a partner that is already buried in the path.
            if let Some(f) = self.forced.partner(w) {
                if f != v && self.visited[f] && f != start {
                    continue;
                }
            }
            self.visited[w] = true;
            self.path.push(w);
            match self.extend() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.path.pop();
            self.visited[w] = false;
        }
        Some(false)
    }
}

/// Exhaustive depth-first Hamilton cycle search that honours forced pairs.
///
/// `node_budget` bounds the number of search nodes; running out yields
/// [`BacktrackOutcome::Timeout`], never a false "none".
pub fn backtrack_hamilton(
    graph: &BlockedGraph,
    forced: &ForcedEdgeSet,
    node_budget: u64,
) -> BacktrackOutcome {
    let n = graph.n();
    if n < 3 {
        return BacktrackOutcome::None;
    }
    let adj = overlay_adjacency(graph, forced);
    let start = (0..n).min_by_key(|&v| adj[v].len()).expect("n >= 3");
    let mut s = Search {
        adj,
        forced,
        n,
        visited: vec![false; n],
        path: vec![start],
        nodes: 0,
        budget: node_budget,
    };
    s.visited[start] = true;
    match s.extend() {
        Some(true) => BacktrackOutcome::Cycle(s.path),
        Some(false) => BacktrackOutcome::None,
        None => BacktrackOutcome::Timeout,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_cycle;

    fn c6() -> BlockedGraph {
        BlockedGraph::single_block(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap()
    }

    #[test]
    fn cycle_with_forced_edge() {
        let f = ForcedEdgeSet::new(6, [(2, 3)]).unwrap();
        match backtrack_hamilton(&c6(), &f, 10_000) {
            BacktrackOutcome::Cycle(c) => assert!(verify_cycle(&c6(), &c, &f)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chord_pair_is_impossible() {
        let f = ForcedEdgeSet::new(6, [(0, 3)]).unwrap();
        assert_eq!(backtrack_hamilton(&c6(), &f, 10_000), BacktrackOutcome::None);
    }

    #[test]
    fn timeout_is_explicit() {
        let g = BlockedGraph::complete(crate::model::BlockPartition::single(12).unwrap());
        let f = ForcedEdgeSet::empty(12);
        assert_eq!(backtrack_hamilton(&g, &f, 3), BacktrackOutcome::Timeout);
    }
}
