use serde::{Deserialize, Serialize};

use super::{BlockPartition, ModelError};

/// Parameters of `G(n, p, q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub partition: BlockPartition,
    pub p: f64,
    pub q: f64,
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ModelError::BadProbability { name, value })
    }
}

impl ModelParams {
    pub fn new(partition: BlockPartition, p: f64, q: f64) -> Result<Self, ModelError> {
        check_probability("p", p)?;
        check_probability("q", q)?;
        Ok(Self { partition, p, q })
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    /// Edge probability for a pair in blocks `i` and `j`.
    #[inline]
    pub fn pair_probability(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.p
        } else {
            self.q
        }
    }

    /// Expected degree `φ_i = p n_i + q (n - n_i)` of a vertex in block `i`.
    pub fn phi(&self, block: usize) -> f64 {
        let n = self.n() as f64;
        let ni = self.partition.size(block) as f64;
        self.p * ni + self.q * (n - ni)
    }
}

/// Per-block critical values and the limiting Hamiltonicity probability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criticals {
    pub phi: Vec<f64>,
    pub c: Vec<f64>,
    pub predicted_ham: f64,
}

impl Criticals {
    pub fn min_c(&self) -> f64 {
        self.c.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `Σ e^{-c_i}`, the limiting mean number of degree-one vertices.
    pub fn poisson_mean(&self) -> f64 {
        self.c.iter().map(|c| (-c).exp()).sum()
    }
}

/// `ln ln n`, defined only when it is positive.
pub(crate) fn log_log(n: usize) -> Result<f64, ModelError> {
    if n <= 3 {
        return Err(ModelError::DegenerateSize(n));
    }
    Ok((n as f64).ln().ln())
}

/// `c_i = p n_i + (n - n_i) q - ln n_i - ln ln n` for every block.
pub fn criticals(params: &ModelParams) -> Result<Criticals, ModelError> {
    let lln = log_log(params.n())?;
    let k = params.partition.k();
    let phi: Vec<f64> = (0..k).map(|i| params.phi(i)).collect();
    let c: Vec<f64> = phi
        .iter()
        .zip(params.partition.sizes())
        .map(|(f, &ni)| f - (ni as f64).ln() - lln)
        .collect();
    let sum: f64 = c.iter().map(|ci| (-ci).exp()).sum();
    Ok(Criticals { phi, c, predicted_ham: (-sum).exp() })
}

/// `min_i c_i` without allocating.
pub fn min_critical(partition: &BlockPartition, p: f64, q: f64) -> Result<f64, ModelError> {
    let n = partition.n();
    let lln = log_log(n)?;
    let n = n as f64;
    Ok(partition
        .sizes()
        .iter()
        .map(|&ni| {
            let ni = ni as f64;
            p * ni + q * (n - ni) - ni.ln() - lln
        })
        .fold(f64::INFINITY, f64::min))
}

/// Smallest `t ∈ [0, hi]` with `f(t) >= target` for nondecreasing `f`.
fn bisect(f: impl Fn(f64) -> f64, hi: f64, target: f64) -> Result<f64, ModelError> {
    let low = f(0.0);
    let high = f(hi);
    if low >= target {
        return Ok(0.0);
    }
    if high < target {
        return Err(ModelError::NoSolution { target, low, high });
    }
    let (mut a, mut b) = (0.0f64, hi);
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        if f(m) < target {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(b)
}

/// The `q` that puts `min_i c_i` at `target_c` with `p` held fixed.
pub fn solve_q_for_window(
    partition: &BlockPartition,
    p: f64,
    target_c: f64,
) -> Result<f64, ModelError> {
    check_probability("p", p)?;
    log_log(partition.n())?;
    bisect(|q| min_critical(partition, p, q).unwrap_or(f64::NAN), 1.0, target_c)
}

/// The `p` that puts `min_i c_i` at `target_c` with `q` held fixed.
pub fn solve_p_for_window(
    partition: &BlockPartition,
    q: f64,
    target_c: f64,
) -> Result<f64, ModelError> {
    check_probability("q", q)?;
    log_log(partition.n())?;
    bisect(|p| min_critical(partition, p, q).unwrap_or(f64::NAN), 1.0, target_c)
}

/// Solves for `q` with `p = ratio * q` tied to it; returns `(p, q)`.
pub fn solve_common_for_window(
    partition: &BlockPartition,
    ratio: f64,
    target_c: f64,
) -> Result<(f64, f64), ModelError> {
    if !(ratio.is_finite() && ratio >= 0.0) {
        return Err(ModelError::BadProbability { name: "ratio", value: ratio });
    }
    log_log(partition.n())?;
    let hi = if ratio > 1.0 { 1.0 / ratio } else { 1.0 };
    let q = bisect(
        |t| min_critical(partition, ratio * t, t).unwrap_or(f64::NAN),
        hi,
        target_c,
    )?;
    Ok(((ratio * q).min(1.0), q))
}
