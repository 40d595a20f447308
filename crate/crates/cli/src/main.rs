//! `quasifold`: analyze, construct, verify and plot polytopes from the
//! command line.
//!
//! Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 verification
//! threshold missed.

use clap::{Args, Parser, Subcommand};
use quasifold_core::construction::{
    build_construction_with_precision, DelzantData, DEFAULT_PRECISION,
};
use quasifold_core::corpus;
use quasifold_core::plot::{render_csv, render_svg};
use quasifold_core::polytope::{parse_document, Document};
use quasifold_core::report::{analyze, construction_report};
use quasifold_core::verify::{run_verification, sample_level_set, Sample, VerifyConfig};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quasifold",
    version,
    about = "Generalized Delzant construction for simple convex polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplicity, rationality and Delzant checks for a polytope.
    Analyze(Common),
    /// Build the quasifold data: kernel, moment maps, classification, vertex charts.
    Construct(Common),
    /// Run the sampled verification suite.
    Verify(VerifyArgs),
    /// Write CSV and/or SVG renderings of the moment image.
    Plot(PlotArgs),
    /// List the builtin examples.
    Examples,
}

#[derive(Args)]
struct Source {
    /// Polytope document (JSON).
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "builtin",
        required_unless_present = "builtin"
    )]
    input: Option<PathBuf>,
    /// Builtin example, optionally written `builtin:NAME`.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Write the JSON report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV of drawn μ and computed Φ(z) per sample.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// SVG of the Φ-images over the polytope outline (dimension 2 only).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, value_name = "X")]
    tol_roundtrip: Option<f64>,
    #[arg(long, value_name = "X")]
    tol_rank: Option<f64>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    sampling: Sampling,
}

enum Failure {
    Io(String),
    Invalid(String),
    Threshold(Vec<String>),
}

impl Failure {
    fn report(&self) -> ExitCode {
        match self {
            Failure::Io(m) => {
                eprintln!("error: {m}");
                ExitCode::from(1)
            }
            Failure::Invalid(m) => {
                eprintln!("error: {m}");
                ExitCode::from(2)
            }
            Failure::Threshold(fields) => {
                eprintln!("verification failed: {}", fields.join(", "));
                ExitCode::from(3)
            }
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

fn load(source: &Source) -> Result<(Option<String>, Document), Failure> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let doc = parse_document(&text)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        return Ok((doc.name.clone(), doc));
    }
    let raw = source.builtin.as_deref().expect("clap requires a source");
    let name = raw.strip_prefix("builtin:").unwrap_or(raw);
    let doc = corpus::builtin(name)
        .ok_or_else(|| {
            invalid(format!(
                "unknown builtin `{name}`; see `quasifold examples`"
            ))
        })?
        .map_err(|e| invalid(format!("{name}: {e}")))?;
    Ok((Some(name.to_string()), doc))
}

fn precision() -> Result<f64, Failure> {
    match std::env::var("QUASIFOLD_PRECISION") {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(p) if p > 0.0 && p.is_finite() => Ok(p),
            _ => Err(invalid(format!(
                "QUASIFOLD_PRECISION must be a positive number, got `{text}`"
            ))),
        },
    }
}

fn construct(source: &Source) -> Result<(Option<String>, DelzantData), Failure> {
    let (name, doc) = load(source)?;
    let dd = build_construction_with_precision(&doc.polytope, &doc.extra_generators, precision()?)
        .map_err(invalid)?;
    Ok((name, dd))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit_json(value: &impl Serialize, out: Option<&Path>) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_plots(dd: &DelzantData, samples: &[Sample], sampling: &Sampling) -> Outcome {
    if let Some(path) = &sampling.csv {
        write(path, &render_csv(dd, samples))?;
    }
    if let Some(path) = &sampling.svg {
        write(path, &render_svg(dd, samples).map_err(invalid)?)?;
    }
    Ok(())
}

fn cmd_analyze(args: &Common) -> Outcome {
    let (name, doc) = load(&args.source)?;
    emit_json(
        &analyze(&doc.polytope, name.as_deref(), precision()?),
        args.out.as_deref(),
    )
}

fn cmd_construct(args: &Common) -> Outcome {
    let (name, dd) = construct(&args.source)?;
    let report = construction_report(&dd, name.as_deref()).map_err(invalid)?;
    emit_json(&report, args.out.as_deref())
}

fn positive(value: Option<f64>, flag: &str) -> Result<Option<f64>, Failure> {
    match value {
        Some(x) if !(x > 0.0 && x.is_finite()) => {
            Err(invalid(format!("{flag} must be positive, got {x}")))
        }
        v => Ok(v),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if args.sampling.samples == 0 {
        return Err(invalid("--samples must be at least 1"));
    }
    let mut config = VerifyConfig {
        samples: args.sampling.samples,
        seed: args.sampling.seed,
        ..VerifyConfig::default()
    };
    if let Some(x) = positive(args.tol_roundtrip, "--tol-roundtrip")? {
        config.tolerances.roundtrip = x;
    }
    if let Some(x) = positive(args.tol_rank, "--tol-rank")? {
        config.tolerances.rank = x;
    }
    let (_, dd) = construct(&args.common.source)?;
    let (samples, report) = run_verification(&dd, &config).map_err(invalid)?;
    emit_json(&report, args.common.out.as_deref())?;
    emit_plots(&dd, &samples, &args.sampling)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Threshold(report.failures))
    }
}

fn cmd_plot(args: &PlotArgs) -> Outcome {
    if args.sampling.csv.is_none() && args.sampling.svg.is_none() {
        return Err(invalid("plot needs --csv and/or --svg"));
    }
    let (_, dd) = construct(&args.source)?;
    let samples = match args.sampling.samples {
        0 => Vec::new(),
        n => sample_level_set(&dd, n, args.sampling.seed).map_err(invalid)?,
    };
    emit_plots(&dd, &samples, &args.sampling)
}

fn cmd_examples() -> Outcome {
    for name in corpus::NAMES {
        let doc = corpus::builtin_document(name).expect("listed builtin exists");
        println!("{name:<16} {}", doc.description.unwrap_or_default());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Examples => cmd_examples(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}
