use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cohort_core::{catalog, run, ProblemSpec};
use cohort_opt::config::{ExperimentConfig, SchemeKind};
use cohort_opt::harness::{self, ReportRow};
use cohort_opt::{export, plot};
use serde::Serialize;

/// Exit status for command line usage errors.
const EXIT_USAGE: u8 = 64;
const EXIT_DNC: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const OUT_ENV: &str = "COHORT_OPT_OUT";
const DEFAULT_OUT: &str = "cohort-out";

/// Cohort Intelligence optimizer for constrained benchmark problems.
#[derive(Debug, Parser)]
#[command(name = "cohort-opt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the catalog problems.
    List(ListArgs),
    /// Optimize one problem with one seed.
    ///
    /// Exit status: 0 feasible, 2 did not converge, 3 best point infeasible.
    Run(RunArgs),
    /// Run a seeded multi-replicate experiment and write its reports.
    Bench(BenchArgs),
    /// Render a trace file as an SVG convergence plot.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Filter {
    /// Problems without equality constraints.
    InequalityOnly,
}

#[derive(Debug, Args)]
struct ListArgs {
    /// Restrict the listing.
    #[arg(long, value_enum)]
    filter: Option<Filter>,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Static,
    Dynamic,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Catalog name, e.g. G24 or PV.
    problem: String,
    /// Penalty scheme.
    #[arg(long, value_enum, default_value = "static")]
    scheme: SchemeArg,
    /// Penalty constant [default: 1000 static, 0.5 dynamic].
    #[arg(long = "S", value_name = "S")]
    s: Option<f64>,
    /// Dynamic penalty attempt exponent [default: 2].
    #[arg(long)]
    alpha: Option<u32>,
    /// Dynamic penalty violation exponent [default: 2].
    #[arg(long)]
    beta: Option<u32>,
    /// Equality tolerance [default: 1e-4].
    #[arg(long)]
    delta: Option<f64>,
    /// Cohort size C.
    #[arg(long, default_value_t = 5)]
    candidates: usize,
    /// Sampling interval reduction factor r.
    #[arg(long, default_value_t = 0.9)]
    reduction: f64,
    /// Samples per candidate per attempt t.
    #[arg(long = "samples-t", default_value_t = 10)]
    samples_t: usize,
    /// Saturation tolerance.
    #[arg(long, default_value_t = 1e-11)]
    epsilon: f64,
    /// Learning attempt cap.
    #[arg(long, default_value_t = 1000)]
    max_attempts: u64,
    /// Consecutive saturations with an unchanged best before stopping.
    #[arg(long, default_value_t = 10)]
    max_saturations: u32,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the convergence trace to this CSV file.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Round pressure-vessel plate thicknesses up to 1/16 inch.
    #[arg(long)]
    pv_discrete: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Experiment config (JSON). Without one, every catalog problem runs
    /// with the engine defaults and the static scheme.
    config: Option<PathBuf>,
    /// Comma-separated problem names replacing the config's list.
    #[arg(long, value_delimiter = ',')]
    problems: Option<Vec<String>>,
    /// Replicates per problem [default: config value, else 20].
    #[arg(long)]
    runs: Option<usize>,
    /// Worker threads [default: one per core].
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory [default: config `out`, then $COHORT_OPT_OUT, then ./cohort-out].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the per-run trace files.
    #[arg(long)]
    no_traces: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Trace CSV written by `run --trace` or `bench`.
    trace: PathBuf,
    /// Output SVG [default: trace path with .svg extension].
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::List(args) => cmd_list(&args),
        Command::Run(args) => cmd_run(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Plot(args) => cmd_plot(&args),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Writes `text` to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

#[derive(Serialize)]
struct ListEntry {
    name: String,
    dimension: usize,
    kind: &'static str,
    li: usize,
    ni: usize,
    le: usize,
    ne: usize,
    bounds: Vec<[f64; 2]>,
    known_best: Option<f64>,
}

impl From<&ProblemSpec> for ListEntry {
    fn from(p: &ProblemSpec) -> Self {
        let f = p.features();
        Self {
            name: p.name().to_string(),
            dimension: p.dimension(),
            kind: f.kind.as_str(),
            li: f.li,
            ni: f.ni,
            le: f.le,
            ne: f.ne,
            bounds: p.bounds().iter().map(|b| [b.lo, b.hi]).collect(),
            known_best: p.known_best(),
        }
    }
}

fn cmd_list(args: &ListArgs) -> Result<ExitCode, Failure> {
    let mut o = String::new();
    let entries: Vec<ListEntry> = catalog::all()
        .iter()
        .filter(|p| match args.filter {
            Some(Filter::InequalityOnly) => p.constraints().equality_count() == 0,
            None => true,
        })
        .map(ListEntry::from)
        .collect();
    if args.json {
        o.push_str(&format!(
            "{}\n",
            serde_json::to_string_pretty(&entries).context("encoding listing")?
        ));
    } else {
        let _ = writeln!(
            o,
            "{:<12} {:>3}  {:<11} {:>3} {:>3} {:>3} {:>3}  {:>16}",
            "name", "n", "type", "LI", "NI", "LE", "NE", "known best"
        );
        for e in &entries {
            let best = e
                .known_best
                .map_or_else(|| "-".to_string(), |v| v.to_string());
            let _ = writeln!(
                o,
                "{:<12} {:>3}  {:<11} {:>3} {:>3} {:>3} {:>3}  {:>16}",
                e.name, e.dimension, e.kind, e.li, e.ni, e.le, e.ne, best
            );
        }
    }
    emit(&o);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RunSummary<'a> {
    problem: &'a str,
    scheme: &'a str,
    seed: u64,
    best_point: &'a [f64],
    best: f64,
    penalized: f64,
    violation: f64,
    equality_violation: f64,
    feasible: bool,
    converged: bool,
    fe: u64,
    attempts: u64,
    saturations: u32,
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode, Failure> {
    let mut o = String::new();
    let dynamic = matches!(args.scheme, SchemeArg::Dynamic);
    if !dynamic && (args.alpha.is_some() || args.beta.is_some()) {
        return Err(Failure::Usage(
            "--alpha and --beta require --scheme dynamic".into(),
        ));
    }
    let mut cfg = ExperimentConfig::default();
    cfg.scheme.kind = if dynamic {
        SchemeKind::Dynamic
    } else {
        SchemeKind::Static
    };
    cfg.scheme.s = args.s;
    cfg.scheme.alpha = args.alpha;
    cfg.scheme.beta = args.beta;
    cfg.delta = args.delta;
    cfg.engine.candidates = Some(args.candidates);
    cfg.engine.reduction = Some(args.reduction);
    cfg.engine.samples_t = Some(args.samples_t);
    cfg.engine.epsilon = Some(args.epsilon);
    cfg.engine.max_attempts = Some(args.max_attempts);
    cfg.engine.max_saturations = Some(args.max_saturations);
    cfg.base_seed = args.seed;
    cfg.pv_discrete = args.pv_discrete;
    cfg.problems = vec![args.problem.clone()];
    cfg.runs = 1;
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let rp = cfg
        .resolve(&args.problem)
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let record = run(&rp.spec, &rp.scheme, &rp.engine).context("optimization failed")?;
    if let Some(path) = &args.trace {
        export::write_trace(path, &record.trace)?;
    }
    let summary = RunSummary {
        problem: rp.spec.name(),
        scheme: rp.scheme.label(),
        seed: record.seed,
        best_point: &record.best_point,
        best: record.best_raw,
        penalized: record.best_penalized,
        violation: record.violation,
        equality_violation: record.equality_violation,
        feasible: record.feasible,
        converged: record.converged,
        fe: record.fe,
        attempts: record.attempts,
        saturations: record.saturations,
    };
    if args.json {
        o.push_str(&format!(
            "{}\n",
            serde_json::to_string_pretty(&summary).context("encoding result")?
        ));
    } else {
        let _ = writeln!(
            o,
            "problem     {} ({} penalty, seed {})",
            summary.problem, summary.scheme, summary.seed
        );
        let _ = writeln!(o, "best        {}", summary.best);
        let _ = writeln!(o, "point       {:?}", summary.best_point);
        let _ = writeln!(o, "violation   {}", summary.violation);
        let _ = writeln!(o, "feasible    {}", summary.feasible);
        let _ = writeln!(
            o,
            "converged   {} ({} saturations)",
            summary.converged, summary.saturations
        );
        let _ = writeln!(o, "FE          {}", summary.fe);
        let _ = writeln!(o, "attempts    {}", summary.attempts);
    }
    emit(&o);
    Ok(if !record.converged {
        ExitCode::from(EXIT_DNC)
    } else if !record.feasible {
        ExitCode::from(EXIT_INFEASIBLE)
    } else {
        ExitCode::SUCCESS
    })
}

fn output_dir(flag: Option<&Path>, config: Option<&Path>) -> PathBuf {
    flag.or(config)
        .map(Path::to_path_buf)
        .or_else(|| {
            std::env::var_os(OUT_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        })
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode, Failure> {
    let mut o = String::new();
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path).map_err(|e| Failure::Usage(e.to_string()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(problems) = &args.problems {
        cfg.problems = problems.clone();
    }
    if let Some(runs) = args.runs {
        cfg.runs = runs;
    }
    if args.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be >= 1".into()));
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let out = output_dir(args.out.as_deref(), cfg.out.as_deref());

    let (report, results) =
        harness::run_experiment(&cfg, args.jobs).context("experiment failed")?;
    export::export(&out, &report, &results, !args.no_traces)?;
    if args.json {
        o.push_str(&format!(
            "{}\n",
            serde_json::to_string_pretty(&report).context("encoding report")?
        ));
    } else {
        print_table(&mut o, &report.rows);
        let _ = writeln!(o, "\nreports written to {}", out.display());
    }
    emit(&o);
    Ok(ExitCode::SUCCESS)
}

fn print_table(o: &mut String, rows: &[ReportRow]) {
    let _ = writeln!(
        o,
        "{:<12} {:<8} {:>16} {:>16} {:>11} {:>16} {:>5} {:>10} {:>10} {:>4}",
        "problem", "scheme", "best", "mean", "sd", "worst", "feas", "mean FE", "time ms", "DNC"
    );
    for r in rows {
        let (best, mean, sd, worst) = match r.stats {
            Some(s) => (
                format!("{:.6}", s.best),
                format!("{:.6}", s.mean),
                format!("{:.2e}", s.sd),
                format!("{:.6}", s.worst),
            ),
            None => ("-".into(), "-".into(), "-".into(), "-".into()),
        };
        let _ = writeln!(
            o,
            "{:<12} {:<8} {:>16} {:>16} {:>11} {:>16} {:>5.2} {:>10.1} {:>10.2} {:>4}",
            r.problem,
            r.scheme,
            best,
            mean,
            sd,
            worst,
            r.feas_rate,
            r.mean_fe,
            r.mean_time_ms,
            r.dnc
        );
    }
}

fn cmd_plot(args: &PlotArgs) -> Result<ExitCode, Failure> {
    let mut o = String::new();
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| args.trace.with_extension("svg"));
    let n = plot::plot_trace(&args.trace, &out)?;
    let _ = writeln!(o, "{} candidates plotted to {}", n, out.display());
    emit(&o);
    Ok(ExitCode::SUCCESS)
}

impl From<export::ExportError> for Failure {
    fn from(e: export::ExportError) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<plot::PlotError> for Failure {
    fn from(e: plot::PlotError) -> Self {
        Failure::Runtime(e.into())
    }
}
