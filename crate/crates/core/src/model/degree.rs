use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, Discrete};
use statrs::function::gamma::ln_gamma;

use super::{BlockedGraph, ModelError, ModelParams};

/// Degree statistics of a single graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// Vertices below this degree are "small" (default `ln n / 10`).
    pub small_threshold: f64,
    /// `x_j_counts[i][j]` = number of vertices of block `i` with degree `j`.
    pub x_j_counts: Vec<Vec<usize>>,
    /// Number of vertices of degree at most one.
    pub n1: usize,
}

impl DegreeProfile {
    pub fn x_j(&self, block: usize, j: usize) -> usize {
        self.x_j_counts[block].get(j).copied().unwrap_or(0)
    }

    /// `X_j` summed over blocks.
    pub fn x_j_total(&self, j: usize) -> usize {
        (0..self.x_j_counts.len()).map(|i| self.x_j(i, j)).sum()
    }

    pub fn is_small(&self, v: usize) -> bool {
        (self.degrees[v] as f64) < self.small_threshold
    }

    pub fn small_count(&self) -> usize {
        (0..self.degrees.len()).filter(|&v| self.is_small(v)).count()
    }
}

pub fn degree_profile(graph: &BlockedGraph) -> DegreeProfile {
    let n = graph.n();
    let part = graph.partition();
    let degrees: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut x_j_counts = vec![Vec::new(); part.k()];
    for (i, counts) in x_j_counts.iter_mut().enumerate() {
        for v in part.range(i) {
            let d = degrees[v];
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
    }
    let n1 = degrees.iter().filter(|&&d| d <= 1).count();
    DegreeProfile { degrees, small_threshold: (n as f64).ln() / 10.0, x_j_counts, n1 }
}

/// Expected number of degree-`j` vertices in one block, exact and Poisson.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeExpectation {
    pub exact: f64,
    pub asymptotic: f64,
}

fn binomial_pmf(trials: usize, p: f64) -> impl Fn(usize) -> f64 {
    let dist = Binomial::new(p, trials as u64).expect("validated probability");
    move |x| if x > trials { 0.0 } else { dist.pmf(x as u64) }
}

/// `E X_j(i)`: exact value `n_i P(W_1 + W_2 = j)` with
/// `W_1 ~ Bin(n_i - 1, p)` and `W_2 ~ Bin(n - n_i, q)`, alongside
/// `n_i e^{-φ_i} φ_i^j / j!`.
pub fn expected_degree_count(
    params: &ModelParams,
    block: usize,
    j: usize,
) -> Result<DegreeExpectation, ModelError> {
    let k = params.partition.k();
    if block >= k {
        return Err(ModelError::BlockOutOfRange { block, k });
    }
    let n = params.n();
    let ni = params.partition.size(block);
    let (m1, m2) = (ni - 1, n - ni);
    let w1 = binomial_pmf(m1, params.p);
    let w2 = binomial_pmf(m2, params.q);
    let lo = j.saturating_sub(m2);
    let hi = j.min(m1);
    let mut prob = 0.0;
    if lo <= hi {
        for a in lo..=hi {
            prob += w1(a) * w2(j - a);
        }
    }
    let phi = params.phi(block);
    let poisson = if phi == 0.0 {
        if j == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (-phi + j as f64 * phi.ln() - ln_gamma(j as f64 + 1.0)).exp()
    };
    Ok(DegreeExpectation { exact: ni as f64 * prob, asymptotic: ni as f64 * poisson })
}

/// Count of vertices with degree at most `α ln n`, and the bound `n^{ρ(α)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowDegreeCensus {
    pub count: usize,
    pub bound: f64,
    pub threshold: f64,
}

impl LowDegreeCensus {
    pub fn within_bound(&self) -> bool {
        self.count as f64 <= self.bound
    }
}

/// `ρ(α) = α + α ln(1/α)`.
pub fn rho(alpha: f64) -> f64 {
    alpha + alpha * (1.0 / alpha).ln()
}

pub fn low_degree_census(graph: &BlockedGraph, alpha: f64) -> Result<LowDegreeCensus, ModelError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ModelError::BadAlpha(alpha));
    }
    let n = graph.n() as f64;
    let threshold = alpha * n.ln();
    let count = (0..graph.n()).filter(|&v| graph.degree(v) as f64 <= threshold).count();
    Ok(LowDegreeCensus { count, bound: n.powf(rho(alpha)), threshold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BlockPartition;

    #[test]
    fn pmf_sums_to_block_size() {
        let params =
            ModelParams::new(BlockPartition::new(vec![12, 9, 5]).unwrap(), 0.3, 0.07).unwrap();
        let n = params.n();
        let total: f64 =
            (0..n).map(|j| expected_degree_count(&params, 1, j).unwrap().exact).sum();
        assert!((total - 9.0).abs() < 1e-9);
    }

    #[test]
    fn zero_phi_puts_everything_at_degree_zero() {
        let params = ModelParams::new(BlockPartition::new(vec![5, 5]).unwrap(), 0.0, 0.0).unwrap();
        let e0 = expected_degree_count(&params, 0, 0).unwrap();
        assert_eq!((e0.exact, e0.asymptotic), (5.0, 5.0));
        let e1 = expected_degree_count(&params, 0, 1).unwrap();
        assert_eq!((e1.exact, e1.asymptotic), (0.0, 0.0));
    }

    #[test]
    fn census_extremes() {
        let k50 = BlockedGraph::complete(BlockPartition::single(50).unwrap());
        assert_eq!(low_degree_census(&k50, 0.5).unwrap().count, 0);
        let empty = BlockedGraph::empty(BlockPartition::single(30).unwrap());
        assert_eq!(low_degree_census(&empty, 0.2).unwrap().count, 30);
        assert!(low_degree_census(&empty, 1.0).is_err());
    }

    #[test]
    fn profile_counts() {
        let g = BlockedGraph::from_edges(BlockPartition::new(vec![2, 2]).unwrap(), [(0, 1), (1, 2)])
            .unwrap();
        let prof = degree_profile(&g);
        assert_eq!(prof.n1, 3);
        assert_eq!(prof.x_j(0, 1), 1);
        assert_eq!(prof.x_j(0, 2), 1);
        assert_eq!(prof.x_j(1, 0), 1);
        assert_eq!(prof.x_j_total(1), 2);
    }
}
