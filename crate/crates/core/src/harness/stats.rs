/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959964;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// `exp(-sum_i e^{-c_i})` with `c_i = p n_i + (n - n_i) q - ln n_i - ln ln n`.
pub fn predicted_ham(sizes: &[usize], p: f64, q: f64) -> f64 {
    (-poisson_mean(sizes, p, q)).exp()
}

/// `sum_i e^{-c_i}`, the limiting mean number of vertices of degree below two.
pub fn poisson_mean(sizes: &[usize], p: f64, q: f64) -> f64 {
    let n: usize = sizes.iter().sum();
    let lnln = (n as f64).ln().ln();
    sizes
        .iter()
        .map(|&ni| {
            let c = p * ni as f64 + (n - ni) as f64 * q - (ni as f64).ln() - lnln;
            (-c).exp()
        })
        .sum()
}

/// Sample mean and unbiased variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / m;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0);
    (mean, var)
}
