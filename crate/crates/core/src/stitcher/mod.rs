//! Constructive Hamilton cycles when crossing edges are sparse.
//!
//! Problematic vertices (fewer than two block edges in the base graph) are
//! covered by green 2-paths, which are supplanted by single green edges.
//! Blue crossing edges are recoloured until every pair of blocks carries an
//! even, positive number of green edges. Blocks are then solved one at a time
//! with the green pairs forced, last block first, and the per-block paths are
//! folded into new pairs for the blocks that remain.
//!
//! Trace format, one line per level:
//! `level=<k> block=<i> vertices=<m> forced=<pairs> outcome=<cycle|none|gave_up|...> paths=<l>`.

mod audit;
mod cover;
mod parity;
mod stitch;

pub use audit::{audit_lemma6, hard_clauses, soft_clauses, AuditConfig, Lemma6Audit, Lemma6Violation};
pub use cover::{
    build_green_cover, check_preconditions, expand, find_problematic, supplant, GreenCover,
    GreenPath, Supplant, SupplantedGraph,
};
pub use parity::{parity_fix, ParityFix, ParityStatus};
pub use stitch::{
    green_paths_intact, stitch, BlockOutcome, BlockSolver, DefaultBlockSolver, StitchResult,
    TraceLine,
};

use serde::Serialize;
use thiserror::Error;

use crate::exposure::ExposedPair;
use crate::rng::stream_seed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StitchError {
    #[error("vertex {vertex} has degree below two")]
    NotD2 { vertex: usize },
    #[error("vertex {vertex} has fewer than two first-round edges")]
    Col1 { vertex: usize },
    #[error("green cover still overlapping at vertex {vertex} after {retries} redraws")]
    CoverExhausted { retries: usize, vertex: usize },
    #[error("no usable crossing edges between blocks {0} and {1}", blocks.0, blocks.1)]
    Bottom { blocks: (usize, usize) },
    #[error("recoloured edges still conflict after {retries} redraws")]
    ParityExhausted { retries: usize },
    #[error("precondition fails at level {level}: {violation:?}")]
    Audit { level: usize, violation: Lemma6Violation },
    #[error("block {block} has no surviving vertices")]
    EmptyBlock { block: usize },
    #[error("block {block} at level {level}: solver returned {outcome}")]
    BlockFailed { level: usize, block: usize, outcome: String },
    #[error("assembled cycle failed verification")]
    Unverified,
    #[error("bad path: {0}")]
    BadPath(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl StitchError {
    /// Short tag for traces and tables.
    pub fn label(&self) -> String {
        match self {
            StitchError::NotD2 { .. } => "not_d2".into(),
            StitchError::Col1 { .. } => "col1".into(),
            StitchError::CoverExhausted { .. } => "cover_exhausted".into(),
            StitchError::Bottom { .. } => "bottom".into(),
            StitchError::ParityExhausted { .. } => "parity_exhausted".into(),
            StitchError::Audit { .. } => "audit".into(),
            StitchError::EmptyBlock { .. } => "empty_block".into(),
            StitchError::BlockFailed { outcome, .. } => outcome.clone(),
            StitchError::Unverified => "unverified".into(),
            StitchError::BadPath(_) => "bad_path".into(),
            StitchError::Internal(_) => "internal".into(),
        }
    }

    /// Whether the failure is a precondition rather than the construction.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            StitchError::NotD2 { .. }
                | StitchError::Col1 { .. }
                | StitchError::CoverExhausted { .. }
                | StitchError::Bottom { .. }
                | StitchError::ParityExhausted { .. }
                | StitchError::EmptyBlock { .. }
        ) || matches!(self, StitchError::Audit { level: 0, .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case3Config {
    pub seed: u64,
    pub max_retries: usize,
    pub audit: AuditConfig,
    pub solver: DefaultBlockSolver,
}

impl Default for Case3Config {
    fn default() -> Self {
        Self { seed: 0, max_retries: 100, audit: AuditConfig::default(), solver: DefaultBlockSolver::default() }
    }
}

/// Everything the pipeline produced, up to the first failure.
#[derive(Clone, Debug)]
pub struct Case3Run {
    pub cover: Option<GreenCover>,
    pub parity: Option<ParityFix>,
    pub audit: Option<Lemma6Audit>,
    pub outcome: Result<StitchResult, StitchError>,
}

impl Case3Run {
    /// Cover, parity fix and audit all succeeded.
    pub fn precondition_passed(&self) -> bool {
        match &self.outcome {
            Ok(_) => true,
            Err(e) => !e.is_precondition(),
        }
    }

    pub fn cycle(&self) -> Option<&[usize]> {
        self.outcome.as_ref().ok().map(|r| r.cycle.as_slice())
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    problematic: usize,
    green_edges: usize,
    recolored: usize,
    outcome: &'a str,
}

impl Case3Run {
    pub fn summary_json(&self) -> String {
        let label = match &self.outcome {
            Ok(_) => "cycle".to_string(),
            Err(e) => e.label(),
        };
        serde_json::to_string(&Summary {
            problematic: self.cover.as_ref().map_or(0, |c| c.problematic.len()),
            green_edges: self.cover.as_ref().map_or(0, |c| c.green_edges.len()),
            recolored: self.parity.as_ref().map_or(0, |p| p.recolored.len()),
            outcome: &label,
        })
        .expect("summary serializes")
    }
}

/// Cover, parity fix, audit and stitch for one exposed pair.
pub fn run_case3(pair: &ExposedPair, cfg: &Case3Config) -> Case3Run {
    let mut run = Case3Run { cover: None, parity: None, audit: None, outcome: Err(StitchError::Unverified) };
    let g = &pair.final_graph;
    let (cover, h) = match build_green_cover(g, &pair.base, stream_seed(cfg.seed, 1), cfg.max_retries) {
        Ok(x) => x,
        Err(e) => {
            run.outcome = Err(e);
            return run;
        }
    };
    run.cover = Some(cover.clone());
    let fix = match parity_fix(&h, &pair.base, &cover, stream_seed(cfg.seed, 2), cfg.max_retries) {
        Ok(f) => f,
        Err(e) => {
            run.outcome = Err(e);
            return run;
        }
    };
    run.parity = Some(fix.clone());
    if let ParityStatus::Bottom { blocks } = fix.status {
        run.outcome = Err(StitchError::Bottom { blocks });
        return run;
    }
    let e_g = fix.green_set(&cover);
    let blocks: Vec<usize> = (0..g.partition().k()).collect();
    let audit = audit_lemma6(&h.with_green(), &h.alive, &e_g, &blocks, &cfg.audit);
    let gate = audit.first(cfg.audit.enforce_soft).cloned();
    run.audit = Some(audit);
    if let Some(violation) = gate {
        run.outcome = Err(StitchError::Audit { level: 0, violation });
        return run;
    }
    run.outcome = stitch(g, &h, &cover, &e_g, &cfg.solver, stream_seed(cfg.seed, 3));
    run
}
