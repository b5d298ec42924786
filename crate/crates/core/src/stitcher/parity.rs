use std::collections::BTreeMap;

use rand::seq::index;
use serde::Serialize;

use crate::model::BlockedGraph;
use crate::rng::rng_from_seed;

use super::cover::{GreenCover, SupplantedGraph};
use super::StitchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParityStatus {
    Ok,
    /// Too few usable blue crossing edges between these two blocks.
    Bottom { blocks: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityFix {
    /// Blue crossing edges recoloured green, sorted.
    pub recolored: Vec<(usize, usize)>,
    /// Their ends, sorted.
    pub ends: Vec<usize>,
    pub status: ParityStatus,
    pub resamples: usize,
}

impl ParityFix {
    /// `E_g`: green supplant edges together with the recoloured ones.
    pub fn green_set(&self, cover: &GreenCover) -> Vec<(usize, usize)> {
        let mut all: Vec<(usize, usize)> =
            cover.green_edges.iter().chain(&self.recolored).copied().collect();
        all.sort_unstable();
        all
    }
}

fn block_pair(graph: &BlockedGraph, u: usize, v: usize) -> Option<(usize, usize)> {
    let (a, b) = (graph.block_of(u), graph.block_of(v));
    (a != b).then(|| (a.min(b), a.max(b)))
}

/// Makes the green count between every two blocks even and positive:
/// one recoloured edge where it is odd, two where it is zero.
///
/// Candidates are blue crossing edges of `base` whose ends survive in `H`.
/// A draw is rejected unless the recoloured edges form a matching, avoid
/// the green edges and avoid their ends.
pub fn parity_fix(
    h: &SupplantedGraph,
    base: &BlockedGraph,
    cover: &GreenCover,
    seed: u64,
    max_retries: usize,
) -> Result<ParityFix, StitchError> {
    let k = base.partition().k();
    let mut green_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &cover.green_edges {
        if let Some(bp) = block_pair(base, u, v) {
            *green_count.entry(bp).or_default() += 1;
        }
    }
    let mut candidates: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (u, v) in base.edges() {
        if let Some(bp) = block_pair(base, u, v) {
            if h.alive[u] && h.alive[v] {
                candidates.entry(bp).or_default().push((u, v));
            }
        }
    }
    let mut needs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let c = green_count.get(&(i, j)).copied().unwrap_or(0);
            let need = if c == 0 { 2 } else { c % 2 };
            if need == 0 {
                continue;
            }
            let pool = candidates.get(&(i, j)).map_or(0, Vec::len);
            if pool < need {
                return Ok(ParityFix {
                    recolored: Vec::new(),
                    ends: Vec::new(),
                    status: ParityStatus::Bottom { blocks: (i, j) },
                    resamples: 0,
                });
            }
            needs.push(((i, j), need));
        }
    }
    let n = base.n();
    let mut green_end = vec![false; n];
    for &(u, v) in &cover.green_edges {
        green_end[u] = true;
        green_end[v] = true;
    }
    let mut rng = rng_from_seed(seed);
    let mut resamples = 0;
    loop {
        let mut chosen = Vec::new();
        for &(bp, need) in &needs {
            let pool = &candidates[&bp];
            for i in index::sample(&mut rng, pool.len(), need) {
                chosen.push(pool[i]);
            }
        }
        let mut used = vec![false; n];
        let ok = chosen.iter().all(|&(u, v)| {
            let fresh = !used[u] && !used[v] && !green_end[u] && !green_end[v];
            used[u] = true;
            used[v] = true;
            fresh && cover.green_edges.binary_search(&(u, v)).is_err()
        });
        if ok {
            chosen.sort_unstable();
            let mut ends: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
            ends.sort_unstable();
            return Ok(ParityFix { recolored: chosen, ends, status: ParityStatus::Ok, resamples });
        }
        if resamples >= max_retries {
            return Err(StitchError::ParityExhausted { retries: max_retries });
        }
        resamples += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BlockPartition;
    use crate::stitcher::cover::build_green_cover;

    #[test]
    fn single_block_needs_nothing() {
        let g = BlockedGraph::complete(BlockPartition::single(5).unwrap());
        let (cover, h) = build_green_cover(&g, &g, 0, 10).unwrap();
        let fix = parity_fix(&h, &g, &cover, 0, 10).unwrap();
        assert_eq!(fix.status, ParityStatus::Ok);
        assert!(fix.recolored.is_empty());
    }

    #[test]
    fn zero_green_edges_recolors_two() {
        let p = BlockPartition::new(vec![4, 4]).unwrap();
        let mut edges: Vec<(usize, usize)> = vec![];
        for b in [0, 4] {
            for i in b..b + 4 {
                for j in i + 1..b + 4 {
                    edges.push((i, j));
                }
            }
        }
        edges.extend([(0, 4), (1, 5), (2, 6)]);
        let g = BlockedGraph::from_edges(p, edges).unwrap();
        let (cover, h) = build_green_cover(&g, &g, 0, 10).unwrap();
        let fix = parity_fix(&h, &g, &cover, 9, 10).unwrap();
        assert_eq!(fix.status, ParityStatus::Ok);
        assert_eq!(fix.recolored.len(), 2);
        assert_eq!(fix.ends.len(), 4);
    }

    #[test]
    fn lone_crossing_edge_is_bottom() {
        let g = BlockedGraph::complete(BlockPartition::new(vec![3, 3]).unwrap());
        let g = g.without_edges(g.edge_vec().into_iter().filter(|&(u, v)| u < 3 && v >= 3 && (u, v) != (0, 3)));
        let (cover, h) = build_green_cover(&g, &g, 0, 10).unwrap();
        let fix = parity_fix(&h, &g, &cover, 0, 10).unwrap();
        assert_eq!(fix.status, ParityStatus::Bottom { blocks: (0, 1) });
    }
}
