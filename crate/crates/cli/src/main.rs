use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use ammd_cli::{on_instance, run_bench, BenchConfig, CliError, SpaceSummary};
use ammd_core::io::{format_matrix, load_auto, write_result, Instance, InstanceFormat, OutputFormat, ResultRecord};
use ammd_core::metric::validate_pseudometric;
use ammd_core::solvers::NaiveMode;
use ammd_core::synth::{asymmetric_norm_metric, epsilon_symmetric, random_metric, scale_free_metric, ScaleFree};
use ammd_core::{solve, Algorithm, AntichainBackend, CenterRule, Distance, SolveOptions, StartRule};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Select k points whose smallest pairwise distance (taking the shorter
/// direction) is as large as possible.
#[derive(Parser)]
#[command(name = "ammd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Report size, distance range and metric properties of an instance.
    Validate(InputArgs),
    /// Run every instance, algorithm and k of a JSON config.
    Bench(BenchArgs),
    /// Write a generated instance as a distance matrix.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    format: InstanceFormat,
    /// Replace distances by shortest-path lengths (edge lists always are).
    #[arg(long)]
    close: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Farthest,
    First,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Flow,
    Matching,
}

#[derive(Clone, Copy, ValueEnum)]
enum NaiveArg {
    Scan,
    Binary,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    algorithm: Algorithm,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draws for the random baseline.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Seconds the exact solver may search before reporting bounds.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = OutputFormat::Json)]
    output_format: OutputFormat,
    #[arg(long, value_enum, default_value_t = CenterArg::Farthest)]
    center_rule: CenterArg,
    /// `max-edge` or `fixed:ID` with a vertex index.
    #[arg(long, default_value_t = StartRule::MaxEdge)]
    start_rule: StartRule,
    #[arg(long, value_enum, default_value_t = BackendArg::Flow)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = NaiveArg::Scan)]
    naive_mode: NaiveArg,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// Parallel cells; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Overrides the config's output path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Overrides the config's series directory.
    #[arg(long)]
    series_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Directed preferential attachment with reverse arcs, unit weights, closed.
    ScaleFree,
    /// Random complete digraph with weights below --max-weight, closed.
    RandomComplete,
    /// Closed metric whose directions differ by at most a factor 1 + eps.
    EpsilonSymmetric,
    /// Random lattice points under an asymmetric norm.
    AsymmetricNorm,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_weight: u64,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long)]
    output: PathBuf,
}

/// A failure with its exit status: 1 bad flags, 2 unreadable or invalid
/// input, 3 infeasible request.
struct Failure(u8, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Core(e) => e.into(),
            other => Failure(2, other.to_string()),
        }
    }
}

impl From<ammd_core::Error> for Failure {
    fn from(e: ammd_core::Error) -> Self {
        match e {
            ammd_core::Error::InvalidK { k, n } if k > n && k >= 2 => Failure(3, e.to_string()),
            ammd_core::Error::InvalidK { .. } | ammd_core::Error::VertexOutOfRange { .. } => Failure(1, e.to_string()),
            other => Failure(2, other.to_string()),
        }
    }
}

fn options(a: &SolveArgs) -> Result<SolveOptions, Failure> {
    let time_budget = match a.time_budget {
        Some(t) if t.is_finite() && t >= 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(Failure(1, format!("bad --time-budget {t}"))),
        None => None,
    };
    Ok(SolveOptions {
        seed: a.seed,
        reps: a.reps,
        start: a.start_rule,
        center_rule: match a.center_rule {
            CenterArg::Farthest => CenterRule::FarthestFirst,
            CenterArg::First => CenterRule::FirstUnmarked,
        },
        naive_mode: match a.naive_mode {
            NaiveArg::Scan => NaiveMode::Scan,
            NaiveArg::Binary => NaiveMode::Binary,
        },
        backend: match a.backend {
            BackendArg::Flow => AntichainBackend::Flow,
            BackendArg::Matching => AntichainBackend::Matching,
        },
        time_budget,
    })
}

fn solve_instance<T: Distance>(inst: &Instance<T>, a: &SolveArgs, opts: &SolveOptions) -> Result<(), Failure> {
    let d = &inst.matrix;
    let report = validate_pseudometric(d, 0.0);
    if !report.is_pseudometric {
        let hint = if inst.closed { "" } else { "; rerun with --close" };
        return Err(Failure(
            2,
            format!("{}: not a pseudometric ({} violations){hint}", inst.name, report.violation_count),
        ));
    }
    let r = solve(d, a.k, a.algorithm, opts)?;
    let record = ResultRecord::new(&inst.name, d, &r, Some(a.seed));
    println!("score: {}", record.score);
    println!("solution: {}", record.solution.join(" "));
    if let Some(b) = &r.bounds {
        if !b.complete {
            let refuted = b.refuted.map_or("none".to_string(), |v| v.to_value().to_string());
            println!("search incomplete: optimum at least {}, refuted at {refuted}", b.lower.to_value());
        }
    }
    log::info!("{} k={} in {:.1} ms", a.algorithm, a.k, record.elapsed_ms);
    if let Some(path) = &a.output {
        write_result(&record, path, a.output_format)?;
    }
    Ok(())
}

fn load(input: &InputArgs) -> Result<ammd_core::io::AnyInstance, Failure> {
    let any = load_auto(&input.input, input.format, input.close)?;
    on_instance!(&any, i => {
        for w in &i.warnings {
            log::warn!("{}: {w}", i.name);
        }
        if i.dropped > 0 {
            log::warn!("{}: kept the largest strongly connected component, dropped {} vertices", i.name, i.dropped);
        }
    });
    Ok(any)
}

fn cmd_solve(a: &SolveArgs) -> Result<(), Failure> {
    if a.k < 2 {
        return Err(Failure(1, format!("--k must be at least 2, got {}", a.k)));
    }
    let opts = options(a)?;
    let any = load(&a.input)?;
    on_instance!(&any, i => solve_instance(i, a, &opts))
}

fn cmd_validate(a: &InputArgs) -> Result<(), Failure> {
    let any = load(a)?;
    let summary = on_instance!(&any, i => SpaceSummary::of(&i.name, &i.matrix));
    print!("{summary}");
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    let mut cfg = BenchConfig::from_path(&a.config)?;
    if a.output.is_some() {
        cfg.output.clone_from(&a.output);
    }
    if a.series_dir.is_some() {
        cfg.series_dir.clone_from(&a.series_dir);
    }
    let report = run_bench(&cfg, a.jobs)?;
    for row in report.rows.iter().filter(|r| r.error.is_some()) {
        log::warn!("{} {} k={}: {}", row.instance, row.algorithm, row.k, row.error.as_deref().unwrap_or(""));
    }
    match &cfg.output {
        Some(path) => report.write(path, cfg.output_format)?,
        None => print!("{}", report.render(cfg.output_format)?),
    }
    if let Some(dir) = &cfg.series_dir {
        report.write_series(dir)?;
    }
    Ok(())
}

fn cmd_generate(a: &GenerateArgs) -> Result<(), Failure> {
    if a.n == 0 {
        return Err(Failure(1, "--n must be positive".into()));
    }
    if a.max_weight < 2 {
        return Err(Failure(1, "--max-weight must be at least 2".into()));
    }
    let d = match a.kind {
        Kind::ScaleFree => scale_free_metric(a.n, ScaleFree::default(), a.seed)?,
        Kind::RandomComplete => random_metric(a.n, a.max_weight, a.seed)?,
        Kind::EpsilonSymmetric => {
            if !(a.eps.is_finite() && a.eps >= 0.0) {
                return Err(Failure(1, format!("bad --eps {}", a.eps)));
            }
            epsilon_symmetric(a.n, a.max_weight, a.eps, a.seed)?
        }
        Kind::AsymmetricNorm => asymmetric_norm_metric(a.n, 2, a.max_weight, 3, a.seed),
    };
    write_file(&a.output, &format_matrix(&d))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Generate(a) => cmd_generate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
