mod commands;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bilex::audit::{Grid, Report};
use bilex::{Embedding, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Bilipschitz extension of polyline embeddings of the real line.
#[derive(Debug, Parser)]
#[command(name = "bilex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F on a grid and write "x,y,Fx,Fy,normDF,normDFinv" rows.
    Extend(ExtendArgs),
    /// Distortion audit: ||DF||, ||DF^-1|| and pair quotients against the bounds.
    Audit(AuditArgs),
    /// Run a suite of lemma, constant or invariance checks.
    Verify(VerifyArgs),
    /// Write the images of the grid lines, for plotting.
    ExportGrid(ExportArgs),
}

#[derive(Debug, Args)]
struct CurveArg {
    /// Curve JSON file.
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Debug, Args)]
struct ExtendArgs {
    #[command(flatten)]
    curve: CurveArg,
    /// Grid "x0:x1:dx,y0:y1:dy"; points with |y| < 1e-6 are skipped.
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.5,-5:5:0.5")]
    grid: Grid,
    /// Tolerance of the inner inversion.
    #[arg(long)]
    tol: Option<f64>,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.25,-5:5:0.25")]
    grid: Grid,
    /// Number of point pairs for the quotient check.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// JSON report; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Constants,
    Invariance,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long, value_enum)]
    suite: Suite,
    /// Random points per check.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Walks per harmonic-measure estimate.
    #[arg(long, default_value_t = 20_000)]
    walks: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance of the invariance checks.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.5,-5:5:0.5")]
    grid: Grid,
    /// Samples per grid cell along each line.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Checks(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn load_curve(path: &Path) -> Result<(String, Embedding), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let curve = Embedding::from_json_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((id, curve))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &Report, path: Option<&Path>) -> Result<(), Failure> {
    let mut text = report.to_json_pretty();
    text.push('\n');
    write_output(path, &text)?;
    let failing: Vec<String> = report.failing().map(|c| c.name.clone()).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failing))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BILEX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("BILEX_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Extend(a) => {
            let (_, curve) = load_curve(&a.curve.curve)?;
            if a.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
                return Err(Failure::Usage("--tol must be positive".into()));
            }
            let csv = commands::extend_csv(&curve, &a.grid, a.tol)?;
            write_output(a.out.as_deref(), &csv)
        }
        Command::Audit(a) => {
            let (id, curve) = load_curve(&a.curve.curve)?;
            let report = commands::audit(&id, &curve, &a.grid, a.samples, a.seed)?;
            emit_report(&report, a.report.as_deref())
        }
        Command::Verify(a) => {
            let (id, curve) = load_curve(&a.curve.curve)?;
            if !(a.tol > 0.0 && a.tol.is_finite()) {
                return Err(Failure::Usage("--tol must be positive".into()));
            }
            let opts = commands::VerifyOptions { samples: a.samples, walks: a.walks, seed: a.seed, tol: a.tol };
            let report = commands::verify(&id, &curve, a.suite, &opts)?;
            emit_report(&report, a.report.as_deref())
        }
        Command::ExportGrid(a) => {
            let (_, curve) = load_curve(&a.curve.curve)?;
            if a.samples == 0 {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let csv = commands::export_grid_csv(&curve, &a.grid, a.samples)?;
            write_output(a.out.as_deref(), &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(names)) => {
            for n in names {
                eprintln!("check failed: {n}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
    }
}
