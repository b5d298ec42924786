//! Monte Carlo sweeps over a window of `min_i c_i`.
//!
//! Output columns, in order: `c, n, trials, p_hat_ham, p_hat_d2, p_hat_gap,
//! predicted, ci_lo, ci_hi`. The JSON form carries the same rows plus raw
//! counts and a `schema_version`.

mod config;
mod emit;
mod stats;
mod sweep;

pub use config::{parse_config, parse_window, ExperimentConfig, Format, Regime};
pub use emit::{parse_sweep_json, to_csv_string, to_json_string, write_csv, write_table, CSV_COLUMNS};
pub use stats::{mean_var, poisson_mean, predicted_ham, wilson, Z95};
pub use sweep::{
    estimate_poisson_x1, run_sweep, run_trial, HamVerdict, PoissonEstimate, SweepResult, SweepRow,
    SweepTable, TrialRecord, SCHEMA_VERSION,
};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
