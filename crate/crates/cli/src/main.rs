use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use blockham::exposure::{generate_pair, ExposureSchedule, Variant};
use blockham::harness::{parse_config, run_sweep, to_csv_string, to_json_string, ExperimentConfig, Format};
use blockham::model::{generate, parse_edge_list, solve_p_for_window, to_edge_list, BlockPartition, BlockedGraph, ModelParams};
use blockham::solver::{parse_forced_pairs, posa_solve, ForcedEdgeSet, PosaConfig, PosaVerdict};
use blockham::stitcher::{run_case3, Case3Config};
use blockham::structure::{
    check_c1, check_c2, check_c3, check_c4, check_c5, check_connected, check_d2, check_expn, check_sexpn,
    check_tpcl, CConfig, ExpnConfig, SexpnConfig, T3Classes, TpclConfig, TpclVariant,
};

#[derive(Parser)]
#[command(name = "blockham", version, about = "Hamilton cycles in stochastic block models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over a window of c values.
    Sweep(SweepArgs),
    /// Check a structural predicate on an edge-list file.
    Check {
        graph: PathBuf,
        #[arg(long)]
        predicate: String,
        /// tpcl variant: case1, case2 or case3.
        #[arg(long, default_value = "case1")]
        variant: TpclVariant,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a Hamilton cycle using the given forced pairs.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        forced: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        step_budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the sparse-crossing construction on a sampled graph.
    Stitch {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Crossing probability is `rate / n`.
        #[arg(long, default_value_t = 3.0)]
        rate: f64,
        /// Target `min_i c_i`; sets p.
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        enforce_soft: bool,
    },
    /// Sample a graph and print it as an edge list.
    Generate {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    regime: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    ratio: Option<String>,
    #[arg(long)]
    rate: Option<String>,
    #[arg(long)]
    restarts: Option<String>,
    #[arg(long)]
    step_budget: Option<String>,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &PathBuf) -> Result<BlockedGraph> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn sweep(args: SweepArgs) -> Result<bool> {
    let mut cfg = match &args.config {
        Some(p) => parse_config(&read(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None => ExperimentConfig::default(),
    };
    let flags = [
        ("sizes", &args.sizes),
        ("regime", &args.regime),
        ("window", &args.window),
        ("trials", &args.trials),
        ("seed", &args.seed),
        ("threads", &args.threads),
        ("out", &args.out),
        ("format", &args.format),
        ("ratio", &args.ratio),
        ("rate", &args.rate),
        ("restarts", &args.restarts),
        ("step_budget", &args.step_budget),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v).map_err(|e| anyhow::anyhow!("--{}: {e}", key.replace('_', "-")))?;
        }
    }
    for lint in cfg.lints() {
        eprintln!("warning: {lint}");
    }
    let result = run_sweep(&cfg)?;
    let text = match cfg.format {
        Format::Csv => to_csv_string(&result.table),
        Format::Json => to_json_string(&result.table),
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn check(graph: &BlockedGraph, predicate: &str, variant: TpclVariant, seed: u64, json: bool) -> Result<bool> {
    let expn = ExpnConfig::default().with_seed(seed);
    let c = CConfig { seed, ..CConfig::default() };
    let single = match predicate {
        "expn" => check_expn(graph, &expn),
        "sexpn" => check_sexpn(graph, &SexpnConfig { expn, ..SexpnConfig::default() }),
        "d2" => check_d2(graph),
        "cnt" => check_connected(graph),
        "c1" => check_c1(graph),
        "c2" => check_c2(graph, &c),
        "c3" => check_c3(graph, &c),
        "c4" => check_c4(graph, &c),
        "c5" => check_c5(graph, &c),
        "tpcl" => {
            let mut cfg = TpclConfig::new(variant);
            cfg.sexpn.expn = expn;
            cfg.t3 = T3Classes::default();
            let r = check_tpcl(graph, &cfg);
            print!("{}", if json { r.to_json() + "\n" } else { r.to_kv() });
            return Ok(r.holds);
        }
        other => bail!("unknown predicate {other:?}"),
    };
    print!("{}", if json { single.to_json() + "\n" } else { single.to_kv() });
    Ok(single.holds)
}

fn solve(graph: &BlockedGraph, forced: Option<&PathBuf>, posa: PosaConfig) -> Result<bool> {
    let forced = match forced {
        Some(p) => parse_forced_pairs(&read(p)?, graph.n()).with_context(|| format!("parsing {}", p.display()))?,
        None => ForcedEdgeSet::empty(graph.n()),
    };
    let res = posa_solve(graph, &forced, &posa);
    println!("restarts={} steps={}", res.stats.restarts, res.stats.steps);
    Ok(match res.verdict {
        PosaVerdict::Cycle(c) => {
            let s: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            println!("verdict=cycle\ncycle={}", s.join(","));
            true
        }
        PosaVerdict::Infeasible(why) => {
            println!("verdict=infeasible\nreason={why:?}");
            false
        }
        PosaVerdict::GaveUp => {
            println!("verdict=gave_up");
            false
        }
    })
}

fn stitch(sizes: Vec<usize>, seed: u64, rate: f64, c: f64, enforce_soft: bool) -> Result<bool> {
    let part = BlockPartition::new(sizes)?;
    let q = (rate / part.n() as f64).min(1.0);
    let p = solve_p_for_window(&part, q, c)?;
    let params = ModelParams::new(part, p, q)?;
    let schedule = ExposureSchedule::default_for(Variant::Case3, params)?;
    let pair = generate_pair(&schedule, seed);
    let mut cfg = Case3Config { seed, ..Case3Config::default() };
    cfg.audit.enforce_soft = enforce_soft;
    let run = run_case3(&pair, &cfg);
    match &run.outcome {
        Ok(r) => r.trace.iter().for_each(|t| println!("{t}")),
        Err(e) => eprintln!("stitch failed: {e}"),
    }
    println!("{}", run.summary_json());
    Ok(run.cycle().is_some())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Check { graph, predicate, variant, seed, json } => check(&load_graph(&graph)?, &predicate, variant, seed, json),
        Command::Solve { graph, forced, restarts, step_budget, seed } => {
            solve(&load_graph(&graph)?, forced.as_ref(), PosaConfig { restarts, step_budget, seed })
        }
        Command::Stitch { sizes, seed, rate, c, enforce_soft } => stitch(sizes, seed, rate, c, enforce_soft),
        Command::Generate { sizes, p, q, seed, out } => {
            let params = ModelParams::new(BlockPartition::new(sizes)?, p, q)?;
            let text = to_edge_list(&generate(&params, seed));
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
