use rand::Rng;
use rand_distr::{Distribution, Geometric};

use super::{BlockPartition, BlockedGraph, ModelParams};
use crate::rng::rng_from_seed;

/// Visits a random subset of the pairs `u < v`, each included independently
/// with probability `p_block` (same block) or `p_cross` (different blocks).
///
/// Pairs arrive in lexicographic order. Runs in time proportional to
/// `n` plus the number of pairs produced, by jumping over gaps with a
/// geometric variate.
pub fn for_each_random_pair<R: Rng + ?Sized>(
    partition: &BlockPartition,
    p_block: f64,
    p_cross: f64,
    rng: &mut R,
    mut visit: impl FnMut(usize, usize),
) {
    let n = partition.n();
    let block_gap = gap_distribution(p_block);
    let cross_gap = gap_distribution(p_cross);
    for b in 0..partition.k() {
        let end = partition.range(b).end;
        for u in partition.range(b) {
            // For v > u the same-block targets come first and the crossing
            // targets form one contiguous run after them.
            if let Some(g) = &block_gap {
                walk(u + 1, end, g, rng, |v| visit(u, v));
            }
            if let Some(g) = &cross_gap {
                walk(end, n, g, rng, |v| visit(u, v));
            }
        }
    }
}

fn gap_distribution(p: f64) -> Option<Geometric> {
    if p <= 0.0 {
        None
    } else {
        Some(Geometric::new(p.min(1.0)).expect("probability in (0, 1]"))
    }
}

fn walk<R: Rng + ?Sized>(
    start: usize,
    end: usize,
    gap: &Geometric,
    rng: &mut R,
    mut hit: impl FnMut(usize),
) {
    let mut v = start;
    while v < end {
        let skip = gap.sample(rng);
        let Some(next) = usize::try_from(skip).ok().and_then(|s| v.checked_add(s)) else {
            return;
        };
        if next >= end {
            return;
        }
        hit(next);
        v = next + 1;
    }
}

/// Samples `G(n, p, q)` from a caller-supplied generator.
pub fn generate_with_rng<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> BlockedGraph {
    let mut edges = Vec::new();
    for_each_random_pair(&params.partition, params.p, params.q, rng, |u, v| edges.push((u, v)));
    BlockedGraph::from_unique_edges(params.partition.clone(), &edges)
}

/// Samples `G(n, p, q)`; the result is a pure function of `(params, seed)`.
pub fn generate(params: &ModelParams, seed: u64) -> BlockedGraph {
    generate_with_rng(params, &mut rng_from_seed(seed))
}
