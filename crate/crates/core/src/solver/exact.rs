use super::SolverError;
use crate::model::BlockedGraph;

pub const HELD_KARP_LIMIT: usize = 22;
pub const LONGEST_PATH_LIMIT: usize = 20;

fn neighbor_masks(graph: &BlockedGraph) -> Vec<u32> {
    (0..graph.n())
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let t = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(t)
    })
}

/// Exact Hamilton cycle search by subset dynamic programming.
///
/// `ends[S]` holds, as a bitmask, every `v` such that some path starting at
/// vertex 0 visits exactly `S` and stops at `v`.
pub fn held_karp_hamilton(graph: &BlockedGraph) -> Result<Option<Vec<usize>>, SolverError> {
    let n = graph.n();
    if n > HELD_KARP_LIMIT {
        return Err(SolverError::TooLarge { n, limit: HELD_KARP_LIMIT });
    }
    if n < 3 {
        return Ok(None);
    }
    let nb = neighbor_masks(graph);
    let full = (1u32 << n) - 1;
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for mask in (1..=full).step_by(2) {
        let e = ends[mask as usize];
        for v in bits(e) {
            for w in bits(nb[v] & !mask) {
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let Some(last) = bits(ends[full as usize] & nb[0]).next() else {
        return Ok(None);
    };
    let mut cycle = vec![last];
    let (mut mask, mut cur) = (full, last);
    while cur != 0 {
        mask &= !(1 << cur);
        cur = bits(ends[mask as usize] & nb[cur]).next().expect("predecessor recorded");
        cycle.push(cur);
    }
    cycle.reverse();
    Ok(Some(cycle))
}

/// Exact longest path: its length in edges and one witnessing path.
pub fn longest_path_exact(graph: &BlockedGraph) -> Result<(usize, Vec<usize>), SolverError> {
    let n = graph.n();
    if n > LONGEST_PATH_LIMIT {
        return Err(SolverError::TooLarge { n, limit: LONGEST_PATH_LIMIT });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let nb = neighbor_masks(graph);
    let full = (1u32 << n) - 1;
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = (1u32, 0usize);
    for mask in 1..=full {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > best.0.count_ones() {
            best = (mask, e.trailing_zeros() as usize);
        }
        for v in bits(e) {
            for w in bits(nb[v] & !mask) {
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let (mut mask, mut cur) = best;
    let mut path = vec![cur];
    while mask.count_ones() > 1 {
        mask &= !(1 << cur);
        cur = bits(ends[mask as usize] & nb[cur]).next().expect("predecessor recorded");
        path.push(cur);
    }
    Ok((path.len() - 1, path))
}
