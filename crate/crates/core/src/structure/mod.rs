//! Finite-instance checkers for the structural predicates: minimum degree,
//! connectivity, the expansion family, the typical-graph conjunction, the
//! colouring conditions on exposed pairs and the local sparsity properties.
//!
//! Universal quantifiers over large families are discharged exhaustively when
//! the family is small and by adversarial plus uniform sampling otherwise.
//! Every report records which.

mod basic;
mod col;
mod cprops;
mod expn;
mod report;
mod sexpn;
mod tpcl;

pub use basic::{check_connected, check_d2, n1, neighborhood};
pub use col::{check_col, check_col1, check_col_a, check_col_b, ColVariant};
pub use cprops::{
    check_c1, check_c2, check_c3, check_c4, check_c5, check_c_properties, induced_edges, CConfig,
};
pub use expn::{check_expn, check_expn_plus, ExpnConfig};
pub use report::{CompositeReport, Mode, PredicateReport, Witness};
pub use sexpn::{check_sexpn, check_ssexpn, RemovalBudget, SexpnConfig};
pub use tpcl::{
    check_t1_blocks, check_t2, check_t3, check_t4, check_t5, check_tpcl, T3Classes, TpclConfig,
    TpclVariant,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("epsilon0 must lie in (0, 1], got {0}")]
    BadEpsilon0(f64),
    #[error("delta must lie in (0, 1], got {0}")]
    BadDelta(f64),
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("epsilon0 = {epsilon0} exceeds delta / 3 = {limit}")]
    Epsilon0AboveDelta { epsilon0: f64, limit: f64 },
}

/// Small-set expansion is only argued up to `delta n / 3`, so the expansion
/// window must not reach past it.
pub fn validate_constants(expn: &ExpnConfig, c: &CConfig) -> Result<(), StructureError> {
    expn.validate()?;
    c.validate()?;
    let limit = c.delta / 3.0;
    if expn.epsilon0 > limit {
        return Err(StructureError::Epsilon0AboveDelta { epsilon0: expn.epsilon0, limit });
    }
    Ok(())
}
