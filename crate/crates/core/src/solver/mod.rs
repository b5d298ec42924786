//! Hamilton cycle and longest path engines.
//!
//! Exact subset-DP oracles for small graphs, a budgeted backtracking search
//! that honours forced pairs, the Pósa rotation closure with booster
//! extraction, and the rotation–extension heuristic used at scale. Forced
//! pairs are treated as overlay edges throughout: a pair may be traversed
//! even if it is not an edge of the graph.

mod backtrack;
mod exact;
mod forced;
mod posa;
mod rotation;
mod verify;

pub use backtrack::{backtrack_hamilton, BacktrackOutcome};
pub use exact::{held_karp_hamilton, longest_path_exact, HELD_KARP_LIMIT, LONGEST_PATH_LIMIT};
pub use forced::{parse_forced_pairs, ForcedEdgeSet};
pub use posa::{
    default_step_budget, posa_solve, Infeasibility, PosaConfig, PosaResult, PosaStats,
    PosaVerdict,
};
pub use rotation::{booster_set, rotate_closure, BoosterSet, PathState, RotationState};
pub use verify::verify_cycle;

use thiserror::Error;

use crate::model::BlockedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("exact solver limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("forced vertex {vertex} out of range for n = {n}")]
    ForcedOutOfRange { vertex: usize, n: usize },
    #[error("forced pair at vertex {0} is a loop")]
    ForcedLoop(usize),
    #[error("vertex {0} lies in two forced pairs")]
    ForcedOverlap(usize),
}

/// Neighbour lists of the graph with every forced pair added, sorted.
pub(crate) fn overlay_adjacency(graph: &BlockedGraph, forced: &ForcedEdgeSet) -> Vec<Vec<usize>> {
    (0..graph.n())
        .map(|v| {
            let mut list = graph.neighbors(v).to_vec();
            if let Some(f) = forced.partner(v) {
                if let Err(i) = list.binary_search(&f) {
                    list.insert(i, f);
                }
            }
            list
        })
        .collect()
}
