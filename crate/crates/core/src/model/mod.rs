//! Graph and parameter types, the one-shot sampler, and closed-form
//! predictions for `G(n, p, q)`.

mod degree;
mod edgelist;
mod generate;
mod graph;
mod params;
mod partition;

pub use degree::{
    degree_profile, expected_degree_count, low_degree_census, rho, DegreeExpectation, DegreeProfile,
    LowDegreeCensus,
};
pub use edgelist::{
    header_line, parse_edge_list, read_edge_list, to_edge_list, write_edge_list, ParseError,
    MAX_VERTICES,
};
pub use generate::{for_each_random_pair, generate, generate_with_rng};
pub use graph::{BlockedGraph, EdgeClass};
pub use params::{
    criticals, min_critical, solve_common_for_window, solve_p_for_window, solve_q_for_window,
    Criticals, ModelParams,
};
pub use partition::BlockPartition;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("a partition needs at least one block")]
    NoBlocks,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("{name} = {value} is not a probability")]
    BadProbability { name: &'static str, value: f64 },
    #[error("n = {0} is too small: log log n must be positive and finite")]
    DegenerateSize(usize),
    #[error("target c = {target} is unreachable: attainable range is [{low}, {high}]")]
    NoSolution { target: f64, low: f64, high: f64 },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("block index {block} out of range for k = {k}")]
    BlockOutOfRange { block: usize, k: usize },
    #[error("alpha = {0} must lie in (0, 1)")]
    BadAlpha(f64),
}
