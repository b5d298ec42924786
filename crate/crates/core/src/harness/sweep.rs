use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{generate, ModelParams};
use crate::rng::stream_seed;
use crate::solver::{posa_solve, ForcedEdgeSet, PosaConfig, PosaVerdict};

use super::config::{ExperimentConfig, Regime};
use super::stats::{mean_var, poisson_mean, predicted_ham, wilson, Z95};
use super::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamVerdict {
    /// A verified Hamilton cycle.
    Found,
    /// Not Hamiltonian: minimum degree below two, disconnected, or a
    /// solver certificate.
    Disproved,
    /// The solver gave up.
    SolverFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub d2: bool,
    pub connected: bool,
    pub ham: HamVerdict,
    /// Vertices of degree exactly one.
    pub x1: usize,
    pub steps: u64,
    pub restarts: usize,
}

/// One trial: sample, test minimum degree, and search only if it is at least two.
pub fn run_trial(params: &ModelParams, seed: u64, posa: &PosaConfig) -> TrialRecord {
    let g = generate(params, stream_seed(seed, 0));
    let d2 = g.min_degree() >= 2;
    let connected = g.is_connected();
    let x1 = (0..g.n()).filter(|&v| g.degree(v) == 1).count();
    let mut rec = TrialRecord { seed, d2, connected, ham: HamVerdict::Disproved, x1, steps: 0, restarts: 0 };
    if !d2 || !connected {
        return rec;
    }
    let cfg = PosaConfig { seed: stream_seed(seed, 1), ..posa.clone() };
    let res = posa_solve(&g, &ForcedEdgeSet::empty(g.n()), &cfg);
    rec.steps = res.stats.steps;
    rec.restarts = res.stats.restarts;
    rec.ham = match res.verdict {
        PosaVerdict::Cycle(_) => HamVerdict::Found,
        PosaVerdict::Infeasible(_) => HamVerdict::Disproved,
        PosaVerdict::GaveUp => HamVerdict::SolverFailed,
    };
    rec
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Target `min_i c_i`.
    pub c: f64,
    pub n: usize,
    pub trials: usize,
    pub p_hat_ham: f64,
    pub p_hat_d2: f64,
    /// Fraction with minimum degree two but no cycle found.
    pub p_hat_gap: f64,
    pub predicted: f64,
    /// Wilson interval for `p_hat_ham`.
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub p: f64,
    pub q: f64,
    pub ham: usize,
    pub d2: usize,
    pub gap: usize,
    /// Minimum degree two, connected, and the solver gave up.
    pub solver_failed: usize,
}

impl SweepRow {
    pub fn from_records(c: f64, params: &ModelParams, records: &[TrialRecord]) -> Self {
        let t = records.len();
        let count = |f: &dyn Fn(&TrialRecord) -> bool| records.iter().filter(|r| f(r)).count();
        let ham = count(&|r| r.ham == HamVerdict::Found);
        let d2 = count(&|r| r.d2);
        let gap = count(&|r| r.d2 && r.ham != HamVerdict::Found);
        let solver_failed = count(&|r| r.ham == HamVerdict::SolverFailed);
        let frac = |k: usize| if t == 0 { 0.0 } else { k as f64 / t as f64 };
        let (ci_lo, ci_hi) = wilson(ham, t, Z95);
        Self {
            c,
            n: params.n(),
            trials: t,
            p_hat_ham: frac(ham),
            p_hat_d2: frac(d2),
            p_hat_gap: frac(gap),
            predicted: predicted_ham(params.partition.sizes(), params.p, params.q),
            ci_lo,
            ci_hi,
            p: params.p,
            q: params.q,
            ham,
            d2,
            gap,
            solver_failed,
        }
    }

    pub fn p_hat_solver_failed(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.solver_failed as f64 / self.trials as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub schema_version: u32,
    pub sizes: Vec<usize>,
    pub regime: Regime,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn new(cfg: &ExperimentConfig, rows: Vec<SweepRow>) -> Self {
        Self { schema_version: SCHEMA_VERSION, sizes: cfg.sizes.clone(), regime: cfg.regime, seed: cfg.seed, rows }
    }

    /// Indices `j` where row `j + 1` lies entirely below row `j`.
    pub fn separated_decreases(&self) -> Vec<usize> {
        self.rows
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1].c > w[0].c && w[1].ci_hi < w[0].ci_lo)
            .map(|(j, _)| j)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub table: SweepTable,
    /// Per window point, per trial.
    pub records: Vec<Vec<TrialRecord>>,
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| HarnessError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Runs every window point. Trial `t` at point `w` uses seed
/// `stream_seed(master, w * trials + t)`, so results do not depend on the
/// thread count.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult, HarnessError> {
    let params: Vec<ModelParams> = cfg.window.iter().map(|&c| cfg.params_for(c)).collect::<Result<_, _>>()?;
    let trials = cfg.trials;
    let posa = cfg.posa(0);
    let records = in_pool(cfg.threads, || {
        params
            .iter()
            .enumerate()
            .map(|(w, pm)| {
                (0..trials)
                    .into_par_iter()
                    .map(|t| run_trial(pm, stream_seed(cfg.seed, (w * trials + t) as u64), &posa))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    })?;
    let rows = cfg.window.iter().zip(&params).zip(&records).map(|((&c, pm), r)| SweepRow::from_records(c, pm, r)).collect();
    Ok(SweepResult { table: SweepTable::new(cfg, rows), records })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonEstimate {
    pub mean: f64,
    pub variance: f64,
    /// `sum_i e^{-c_i}`.
    pub predicted: f64,
}

/// Empirical mean and variance of the number of degree-one vertices.
pub fn estimate_poisson_x1(params: &ModelParams, trials: usize, seed: u64, threads: Option<usize>) -> Result<PoissonEstimate, HarnessError> {
    let xs: Vec<f64> = in_pool(threads, || {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = generate(params, stream_seed(seed, t as u64));
                (0..g.n()).filter(|&v| g.degree(v) == 1).count() as f64
            })
            .collect()
    })?;
    let (mean, variance) = mean_var(&xs);
    Ok(PoissonEstimate { mean, variance, predicted: poisson_mean(params.partition.sizes(), params.p, params.q) })
}
