use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{
    solve_common_for_window, solve_p_for_window, solve_q_for_window, BlockPartition, ModelError,
    ModelParams,
};
use crate::solver::PosaConfig;

use super::ConfigError;

/// How `(p, q)` are tied together along the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `p = ratio * q`, both solved together.
    Dense,
    /// `p = rate / n` fixed, `q` solved.
    PSmall,
    /// `q = rate / n` fixed, `p` solved.
    QSmall,
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(Self::Dense),
            "p_small" | "p-small" => Ok(Self::PSmall),
            "q_small" | "q-small" => Ok(Self::QSmall),
            other => Err(format!("unknown regime {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub regime: Regime,
    /// Target values of `min_i c_i`.
    pub window: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// `p / q` in the dense regime.
    pub ratio: f64,
    /// `n` times the fixed probability in the sparse regimes.
    pub rate: f64,
    pub restarts: usize,
    pub step_budget: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sizes: vec![300, 300],
            regime: Regime::Dense,
            window: vec![0.0],
            trials: 100,
            seed: 0,
            threads: None,
            out: None,
            format: Format::Csv,
            ratio: 1.0,
            rate: 3.0,
            restarts: 20,
            step_budget: None,
        }
    }
}

/// `a:b:step` (inclusive of `b` up to rounding) or a comma list.
pub fn parse_window(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| {
        let v: f64 = t.trim().parse().map_err(|_| format!("bad number {t:?}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite number {t:?}"))
        }
    };
    let parts: Vec<&str> = s.split(':').collect();
    let out = match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step <= 0.0 || b < a {
                return Err("window needs a <= b and step > 0".into());
            }
            let count = ((b - a) / step + 1e-9).floor();
            if count > 1e5 {
                return Err("window too long".into());
            }
            (0..=count as usize).map(|i| a + step * i as f64).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("bad window {s:?}")),
    };
    if out.is_empty() {
        return Err("empty window".into());
    }
    Ok(out)
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let sizes = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err("sizes must be positive".into());
    }
    if sizes.iter().try_fold(0usize, |a, &b| a.checked_add(b)).is_none_or(|n| n > crate::model::MAX_VERTICES) {
        return Err("too many vertices".into());
    }
    Ok(sizes)
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        fn num<T: FromStr>(v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("bad value {v:?}"))
        }
        match key.trim() {
            "sizes" => self.sizes = parse_sizes(v)?,
            "regime" => self.regime = v.parse()?,
            "window" => self.window = parse_window(v)?,
            "trials" => {
                self.trials = num(v)?;
                if self.trials == 0 {
                    return Err("trials must be at least 1".into());
                }
            }
            "seed" => self.seed = num(v)?,
            "threads" => self.threads = Some(num(v)?),
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => self.format = v.parse()?,
            "ratio" => {
                self.ratio = num(v)?;
                if !(self.ratio.is_finite() && self.ratio >= 0.0) {
                    return Err("ratio must be finite and nonnegative".into());
                }
            }
            "rate" => {
                self.rate = num(v)?;
                if !(self.rate.is_finite() && self.rate >= 0.0) {
                    return Err("rate must be finite and nonnegative".into());
                }
            }
            "restarts" => self.restarts = num(v)?,
            "step_budget" => self.step_budget = Some(num(v)?),
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn partition(&self) -> Result<BlockPartition, ModelError> {
        BlockPartition::new(self.sizes.clone())
    }

    pub fn posa(&self, seed: u64) -> PosaConfig {
        PosaConfig { restarts: self.restarts, step_budget: self.step_budget, seed }
    }

    /// Model parameters that put `min_i c_i` at `c`.
    pub fn params_for(&self, c: f64) -> Result<ModelParams, ModelError> {
        let part = self.partition()?;
        let n = part.n() as f64;
        let (p, q) = match self.regime {
            Regime::Dense => solve_common_for_window(&part, self.ratio, c)?,
            Regime::PSmall => {
                let p = (self.rate / n).min(1.0);
                (p, solve_q_for_window(&part, p, c)?)
            }
            Regime::QSmall => {
                let q = (self.rate / n).min(1.0);
                (solve_p_for_window(&part, q, c)?, q)
            }
        };
        ModelParams::new(part, p, q)
    }

    /// Sanity warnings for the standing assumptions; never fatal.
    pub fn lints(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n();
        if self.sizes.len() < 2 {
            out.push("a single block has no crossing pairs".into());
        }
        if let Some(&max) = self.sizes.iter().max() {
            if self.regime == Regime::PSmall && 2 * max > n {
                out.push(format!("largest block {max} exceeds n/2 with p = O(1/n)"));
            }
        }
        if let Some(&min) = self.sizes.iter().min() {
            if (min as f64) < 0.1 * n as f64 {
                out.push(format!("smallest block {min} is under a tenth of n"));
            }
        }
        if self.regime == Regime::QSmall && self.rate * n as f64 <= 10.0 {
            out.push("q n^2 is small; blocks may be disconnected from each other".into());
        }
        out
    }
}

/// Parses a line-oriented `key = value` file; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError { line: i + 1, message: "expected key = value".into() });
        };
        cfg.set(k, v).map_err(|message| ConfigError { line: i + 1, message })?;
    }
    Ok(cfg)
}
