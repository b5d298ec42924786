use blockham::harness::{
    estimate_poisson_x1, parse_config, parse_sweep_json, predicted_ham, run_sweep, to_csv_string, to_json_string,
    wilson, ExperimentConfig, HamVerdict, HarnessError, Regime, SweepTable, CSV_COLUMNS, SCHEMA_VERSION, Z95,
};
use blockham::model::{criticals, BlockPartition, ModelParams};
use proptest::prelude::*;

/// Solves `(x - p)^2 = z^2 x (1 - x) / n` for `x` directly.
fn wilson_by_quadratic(k: usize, n: usize, z: f64) -> (f64, f64) {
    let (p, n, z2) = (k as f64 / n as f64, n as f64, z * z);
    let a = 1.0 + z2 / n;
    let b = -(2.0 * p + z2 / n);
    let c = p * p;
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    (((-b - disc) / (2.0 * a)).max(0.0), ((-b + disc) / (2.0 * a)).min(1.0))
}

fn ln_binom_pmf(n: u64, p: f64, k: u64) -> f64 {
    let mut ln_choose = 0.0;
    for i in 0..k {
        ln_choose += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    ln_choose + k as f64 * p.ln() + (n - k) as f64 * (1.0 - p).ln()
}

fn cfg(sizes: Vec<usize>, window: Vec<f64>, trials: usize) -> ExperimentConfig {
    ExperimentConfig { sizes, window, trials, seed: 5, ..Default::default() }
}

#[test]
fn wilson_examples() {
    let (lo, hi) = wilson(50, 100, Z95);
    assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
    assert!(wilson(0, 10, Z95).0.abs() < 1e-12);
    assert!((wilson(10, 10, Z95).1 - 1.0).abs() < 1e-12);
    assert_eq!(wilson(0, 0, Z95), (0.0, 1.0));
}

#[test]
fn prediction_matches_model_criticals() {
    for (sizes, p, q) in [(vec![300, 300], 0.02, 0.01), (vec![100, 400, 500], 0.05, 0.002), (vec![1000], 0.01, 0.0)] {
        let params = ModelParams::new(BlockPartition::new(sizes.clone()).unwrap(), p, q).unwrap();
        let expected = criticals(&params).unwrap().predicted_ham;
        assert!((predicted_ham(&sizes, p, q) - expected).abs() < 1e-12);
    }
}

#[test]
fn far_above_window_is_hamiltonian() {
    let res = run_sweep(&cfg(vec![250, 250], vec![8.0], 1)).unwrap();
    assert_eq!(res.records[0][0].ham, HamVerdict::Found);
    assert_eq!(res.table.rows[0].p_hat_ham, 1.0);
}

#[test]
fn far_below_window_has_low_degree_vertices() {
    let res = run_sweep(&cfg(vec![250, 250], vec![-8.0], 50)).unwrap();
    let row = &res.table.rows[0];
    assert_eq!((row.d2, row.ham), (0, 0));
    assert!(res.records[0].iter().all(|r| r.ham == HamVerdict::Disproved && r.steps == 0));
}

#[test]
fn degree_one_count_is_poisson_like() {
    let part = BlockPartition::new(vec![400, 600]).unwrap();
    let params = ModelParams::new(part, 0.012, 0.004).unwrap();
    let est = estimate_poisson_x1(&params, 600, 2, None).unwrap();
    let n = 1000u64;
    let exact: f64 = [(400u64, 0.012), (600, 0.012)]
        .iter()
        .map(|&(ni, p)| {
            let inside = ni - 1;
            let cross = n - ni;
            let q = 0.004;
            // one neighbour inside and none across, or the other way round
            let a = (ln_binom_pmf(inside, p, 1) + ln_binom_pmf(cross, q, 0)).exp();
            let b = (ln_binom_pmf(inside, p, 0) + ln_binom_pmf(cross, q, 1)).exp();
            ni as f64 * (a + b)
        })
        .sum();
    let se = (est.variance / 600.0).sqrt();
    assert!((est.mean - exact).abs() <= 4.0 * se, "mean {} exact {exact}", est.mean);
    assert!((est.variance / est.mean - 1.0).abs() < 0.25, "{est:?}");
    assert!(est.predicted > 0.0);
}

#[test]
fn complete_graphs_have_no_degree_one_vertices() {
    let params = ModelParams::new(BlockPartition::new(vec![20, 30]).unwrap(), 1.0, 1.0).unwrap();
    let est = estimate_poisson_x1(&params, 20, 0, None).unwrap();
    assert_eq!((est.mean, est.variance), (0.0, 0.0));
}

#[test]
fn output_is_independent_of_thread_count() {
    let mut base = cfg(vec![120, 80], vec![-1.0, 0.0, 1.0], 12);
    base.regime = Regime::QSmall;
    let mut outs = Vec::new();
    for threads in [1, 2, 4] {
        base.threads = Some(threads);
        outs.push(to_csv_string(&run_sweep(&base).unwrap().table));
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
}

#[test]
fn rates_rise_across_the_window() {
    let res = run_sweep(&cfg(vec![200, 200], vec![-4.0, 0.0, 4.0], 60)).unwrap();
    let d2: Vec<f64> = res.table.rows.iter().map(|r| r.p_hat_d2).collect();
    assert!(d2[0] < d2[1] && d2[1] < d2[2], "{d2:?}");
    let ham: Vec<f64> = res.table.rows.iter().map(|r| r.p_hat_ham).collect();
    assert!(ham[0] <= ham[2], "{ham:?}");
    assert!(res.table.separated_decreases().is_empty());
}

#[test]
fn counts_add_up() {
    let res = run_sweep(&cfg(vec![150, 150], vec![-1.0, 0.5, 2.0], 30)).unwrap();
    for (row, recs) in res.table.rows.iter().zip(&res.records) {
        assert_eq!(row.ham + row.gap, row.d2);
        assert!(row.solver_failed <= row.gap);
        assert_eq!(row.trials, recs.len());
        assert!(row.ci_lo <= row.p_hat_ham && row.p_hat_ham <= row.ci_hi);
        assert!(recs.iter().all(|r| r.ham != HamVerdict::Found || (r.d2 && r.connected)));
    }
}

#[test]
fn table_formats() {
    let res = run_sweep(&cfg(vec![60, 60], vec![0.0, 1.0], 4)).unwrap();
    let csv = to_csv_string(&res.table);
    let header = csv.lines().next().unwrap();
    assert_eq!(header, CSV_COLUMNS.join(","));
    assert_eq!(header, "c,n,trials,p_hat_ham,p_hat_d2,p_hat_gap,predicted,ci_lo,ci_hi");
    assert_eq!(csv.lines().count(), 3);
    let json = to_json_string(&res.table);
    assert_eq!(parse_sweep_json(&json).unwrap(), res.table);
    let empty = SweepTable { rows: vec![], ..res.table.clone() };
    assert_eq!(to_csv_string(&empty).trim_end(), header);
    let future = json.replacen(&format!("\"schema_version\": {SCHEMA_VERSION}"), "\"schema_version\": 99", 1);
    assert!(matches!(parse_sweep_json(&future), Err(HarnessError::Schema(99))));
}

#[test]
fn config_file_then_overrides() {
    let mut c = parse_config("sizes = 50, 50\nregime = p_small\nwindow = 0:2:1\ntrials = 3 # quick\n").unwrap();
    c.set("trials", "7").unwrap();
    assert_eq!((c.sizes.clone(), c.regime, c.window.clone(), c.trials), (vec![50, 50], Regime::PSmall, vec![0.0, 1.0, 2.0], 7));
    let err = parse_config("sizes = 10\n\nwindow = x\n").unwrap_err();
    assert_eq!(err.line, 3);
}

proptest! {
    #[test]
    fn wilson_matches_quadratic(n in 1usize..2000, frac in 0.0f64..=1.0) {
        let k = (frac * n as f64).round() as usize;
        let (lo, hi) = wilson(k, n, Z95);
        let (olo, ohi) = wilson_by_quadratic(k, n, Z95);
        prop_assert!((lo - olo).abs() < 1e-9 && (hi - ohi).abs() < 1e-9);
        let p = k as f64 / n as f64;
        prop_assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
    }

    #[test]
    fn window_points_hit_their_targets(c in -3.0f64..3.0, regime in prop_oneof![Just(Regime::Dense), Just(Regime::PSmall), Just(Regime::QSmall)]) {
        let cfg = ExperimentConfig { sizes: vec![200, 300], regime, ..Default::default() };
        let params = cfg.params_for(c).unwrap();
        let got = criticals(&params).unwrap().min_c();
        prop_assert!(got >= c - 1e-9);
        if params.p > 0.0 && params.q > 0.0 {
            prop_assert!((got - c).abs() < 1e-6);
        }
    }
}
