use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use monogamy::bounds::BoundParams;
use monogamy::harness::{
    example1_table, example2_table, lemma_grid, lemma_grid_points, sweep, verify_monogamy,
    verify_polygamy, write_csv, LemmaGrid, StateSource, SweepConfig, VerificationSummary,
    VerifyOptions, VerifyRun,
};
use monogamy::measures::{MeasureKind, OptimizerBudget};
use monogamy::{Error, Result};

/// Monogamy and polygamy bound checks for qubit entanglement measures.
///
/// Prints a JSON summary on stdout. Exit status: 0 ok, 1 inequality
/// violated, 2 configuration or domain error.
#[derive(Parser)]
#[command(name = "monogamy", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monogamy worked example over (alpha, r); CSV alpha,r,lhs,z1,z2,zprime.
    Example1(ExampleArgs),
    /// Polygamy worked example over (beta, s); CSV beta,s,lhs,z1,z2,zprime.
    Example2(ExampleArgs),
    /// Base and theorem monogamy checks on Haar-random 3- or 4-qubit states.
    VerifyMono(MonoArgs),
    /// Polygamy checks on Haar-random 3-qubit states.
    VerifyPoly(PolyArgs),
    /// Exhaustive grid over one of the two scalar kernel inequalities.
    LemmaGrid(LemmaArgs),
    /// Pair-bound sweep driven by a JSON config.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ExampleArgs {
    /// JSON config; only `exponent_grid`, `r_grid`/`s_grid` and `out` are read.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-sample CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Restarts of the convex-roof optimizer.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
}

#[derive(Args)]
struct MonoArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    n_qubits: usize,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    #[command(flatten)]
    common: SampleArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyMeasure {
    Concurrence,
    NegativityOfAssistance,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = PolyMeasure::NegativityOfAssistance)]
    measure: PolyMeasure,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[command(flatten)]
    common: SampleArgs,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
    /// JSON `{"x": [..], "weight": [..], "k": [..], "t_ratio": [..]}`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV x,weight,k,t,gap of every grid point.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the seed of a random state source.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the count of a random state source.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

fn load_grids(args: &ExampleArgs, defaults: SweepConfig) -> Result<(SweepConfig, Option<PathBuf>)> {
    let cfg = match &args.config {
        Some(path) => SweepConfig::from_path(path)?,
        None => defaults,
    };
    let out = args.out.clone().or_else(|| cfg.out.clone());
    Ok((cfg, out))
}

fn verify_output(run: VerifyRun, out: Option<&Path>) -> Result<VerificationSummary> {
    if let Some(path) = out {
        write_csv(path, &run.records)?;
    }
    Ok(run.summary)
}

fn options(samples: usize, c: &SampleArgs) -> VerifyOptions {
    let mut opts = VerifyOptions::new(samples, c.seed)
        .with_budget(OptimizerBudget::default().with_restarts(c.restarts));
    opts.tolerance = c.tolerance;
    opts
}

fn run(cmd: Cmd) -> Result<VerificationSummary> {
    match cmd {
        Cmd::Example1(args) => {
            let (cfg, out) = load_grids(&args, SweepConfig::example1_default())?;
            let run = example1_table(&cfg.exponent_grid, &cfg.r_grid)?;
            if let Some(path) = out {
                run.write_csv(&path)?;
            }
            Ok(run.summary)
        }
        Cmd::Example2(args) => {
            let (cfg, out) = load_grids(&args, SweepConfig::example2_default())?;
            let run = example2_table(&cfg.exponent_grid, &cfg.r_grid)?;
            if let Some(path) = out {
                run.write_csv(&path)?;
            }
            Ok(run.summary)
        }
        Cmd::VerifyMono(a) => {
            let params = BoundParams::monogamy(a.k, a.p, a.alpha, a.r);
            let run = verify_monogamy(&options(a.samples, &a.common), &params, a.n_qubits)?;
            verify_output(run, a.common.out.as_deref())
        }
        Cmd::VerifyPoly(a) => {
            let params = BoundParams::polygamy(a.k, a.q, a.beta, a.s);
            let measure = match a.measure {
                PolyMeasure::Concurrence => MeasureKind::Concurrence,
                PolyMeasure::NegativityOfAssistance => MeasureKind::NegativityOfAssistance,
            };
            let run = verify_polygamy(&options(a.samples, &a.common), &params, measure)?;
            verify_output(run, a.common.out.as_deref())
        }
        Cmd::LemmaGrid(a) => {
            let grid = match &a.config {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)
                    .map_err(|e| Error::DomainError(format!("config: {e}")))?,
                None => LemmaGrid::default_for(a.which)?,
            };
            if let Some(path) = &a.out {
                write_csv(path, &lemma_grid_points(a.which, &grid)?)?;
            }
            lemma_grid(a.which, &grid)
        }
        Cmd::Sweep(a) => {
            let mut cfg = SweepConfig::from_path(&a.config)?;
            if let Some(out) = a.out {
                cfg.out = Some(out);
            }
            match (&mut cfg.source, a.seed, a.samples) {
                (StateSource::Random { seed, count }, s, n) => {
                    *seed = s.unwrap_or(*seed);
                    *count = n.unwrap_or(*count);
                }
                (StateSource::Named(_), None, None) => {}
                (StateSource::Named(_), _, _) => {
                    return Err(Error::DomainError(
                        "--seed/--samples need a random state source".into(),
                    ))
                }
            }
            Ok(sweep(&cfg, a.tolerance)?.summary)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(summary) => {
            println!("{}", summary.to_json_pretty());
            if summary.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::AssertionFailure(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
