use super::ForcedEdgeSet;
use crate::model::BlockedGraph;

/// True iff `cycle` visits every vertex once, each consecutive pair
/// (including last-to-first) is an edge or a forced pair, and every forced
/// pair appears consecutively.
pub fn verify_cycle(graph: &BlockedGraph, cycle: &[usize], forced: &ForcedEdgeSet) -> bool {
    let n = graph.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let mut used = 0;
    for i in 0..n {
        let (u, v) = (cycle[i], cycle[(i + 1) % n]);
        let is_forced = forced.contains(u, v);
        if !(is_forced || graph.has_edge(u, v)) {
            return false;
        }
        used += usize::from(is_forced);
    }
    used == forced.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> BlockedGraph {
        BlockedGraph::single_block(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
    }

    #[test]
    fn accepts_own_cycle() {
        assert!(verify_cycle(&c5(), &[0, 1, 2, 3, 4], &ForcedEdgeSet::empty(5)));
        assert!(verify_cycle(&c5(), &[2, 1, 0, 4, 3], &ForcedEdgeSet::empty(5)));
    }

    #[test]
    fn rejects_repeats_and_gaps() {
        let f = ForcedEdgeSet::empty(5);
        assert!(!verify_cycle(&c5(), &[0, 1, 2, 3, 3], &f));
        assert!(!verify_cycle(&c5(), &[0, 1, 2, 4, 3], &f));
        assert!(!verify_cycle(&c5(), &[0, 1, 2, 3], &f));
    }

    #[test]
    fn forced_pairs_must_be_consecutive() {
        let g = c5();
        let ok = ForcedEdgeSet::new(5, [(1, 2)]).unwrap();
        assert!(verify_cycle(&g, &[0, 1, 2, 3, 4], &ok));
        // 0-2 is not an edge, but as a forced pair it is usable.
        let chord = ForcedEdgeSet::new(5, [(0, 2)]).unwrap();
        assert!(!verify_cycle(&g, &[0, 1, 2, 3, 4], &chord));
        let g2 = g.with_added_edges([(1, 3)]);
        assert!(verify_cycle(&g2, &[0, 2, 1, 3, 4], &chord));
    }
}
