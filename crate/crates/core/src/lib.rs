//! Hamiltonicity laboratory for the stochastic block model `G(n, p, q)`.
//!
//! The vertex set is split into blocks `V_1..V_k`; pairs inside a block are
//! joined with probability `p`, pairs across blocks with probability `q`.
//! The crate provides the sampler and its closed-form predictions
//! ([`model`]), multi-round exposure couplings ([`exposure`]), exact and
//! rotation-based Hamilton cycle engines ([`solver`]), structural predicate
//! checkers ([`structure`]), the constructive block-stitching pipeline for
//! sparse crossing edges ([`stitcher`]) and a Monte Carlo harness
//! ([`harness`]).

pub mod bitset;
pub mod exposure;
pub mod harness;
pub mod model;
pub mod rng;
pub mod solver;
pub mod stitcher;
pub mod structure;

pub use model::{BlockPartition, BlockedGraph, Criticals, ModelParams};
