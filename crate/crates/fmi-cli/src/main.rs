//! `fmi` — generate, verify and dissect positivity certificates for the two
//! classical interpolation problems (disk nodes and real moment sequences).
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage or input errors.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fmi_core::battery::{self, RunConfig};
use fmi_core::gen::ProblemKind;
use fmi_core::io::{Certificate, Envelope, MeasureFile, ProblemData, ProblemFile};
use fmi_core::report::{all_pass, CheckReport};

#[derive(Parser)]
#[command(
    name = "fmi",
    version,
    about = "Block-matrix positivity toolkit for disk and half-plane interpolation problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded solvable instance together with its certificate
    Gen(GenArgs),
    /// Run the full check suite on an instance/certificate pair
    Check(PairArgs),
    /// Exercise the algebraic identity catalog on random realizations
    Identities(IdentitiesArgs),
    /// Recover the underlying data from a certificate and compare
    Extract(PairArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Np,
    Hamburger,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Np => ProblemKind::Np,
            KindArg::Hamburger => ProblemKind::Hamburger,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct GenArgs {
    /// Which problem family to draw from
    #[arg(long, value_enum)]
    problem: KindArg,
    /// Size of the instance (number of nodes, or moment order)
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Seed; falls back to the FMI_SEED environment variable, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Extra mass at infinity added to the top moment (half-plane only)
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    /// Write the envelope here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    /// Instance file; read an envelope from stdin when omitted
    #[arg(long)]
    problem_file: Option<PathBuf>,
    /// Certificate file; must accompany --problem-file
    #[arg(long)]
    measure_file: Option<PathBuf>,
    /// Seed for the probe grid
    #[arg(long)]
    seed: Option<u64>,
    /// Base tolerance for scaled residuals and eigenvalue floors
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Number of probe points
    #[arg(long, default_value_t = 100)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Which problem family's catalog to run
    #[arg(long, value_enum)]
    problem: KindArg,
    /// Number of random realizations
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Seed for realizations and probe points
    #[arg(long)]
    seed: Option<u64>,
    /// Base tolerance for scaled residuals
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Corrupt one entry of the data matrix first; the run must then fail
    #[arg(long)]
    break_fi: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

fn resolve_seed(cli: Option<u64>) -> u64 {
    cli.or_else(|| {
        std::env::var("FMI_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

/// Reads the instance/certificate pair either from the two file flags or as
/// a single envelope on stdin.
fn load_pair(args: &PairArgs) -> anyhow::Result<(ProblemData, Certificate)> {
    match (&args.problem_file, &args.measure_file) {
        (Some(p), Some(m)) => {
            let problem: ProblemFile = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            let measure: MeasureFile = serde_json::from_str(&std::fs::read_to_string(m)?)?;
            Ok((problem.parse()?, measure.parse()?))
        }
        (None, None) => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            let envelope: Envelope = serde_json::from_str(&text)?;
            Ok((envelope.instance.parse()?, envelope.certificate.parse()?))
        }
        _ => anyhow::bail!("--problem-file and --measure-file must be given together"),
    }
}

fn render(reports: &[CheckReport], format: ReportFormat) -> anyhow::Result<()> {
    match format {
        ReportFormat::Json => println!("{}", serde_json::to_string(reports)?),
        ReportFormat::Text => {
            let width = reports
                .iter()
                .map(|r| r.check_name.len())
                .max()
                .unwrap_or(0)
                .max(12);
            for r in reports {
                let verdict = if r.verdict { "pass" } else { "FAIL" };
                let mut line = format!("{:<width$}  {}", r.check_name, verdict);
                if let Some(v) = r.residual {
                    line.push_str(&format!("  residual {v:9.3e}"));
                }
                if let Some(v) = r.min_eigenvalue {
                    line.push_str(&format!("  min_eig {v:10.3e}"));
                }
                if let Some([re, im]) = r.witness {
                    line.push_str(&format!("  at {re:+.4}{im:+.4}i"));
                }
                println!("{line}");
            }
            let failed = reports.iter().filter(|r| !r.verdict).count();
            if failed == 0 {
                println!("all {} checks passed", reports.len());
            } else {
                println!("{failed} of {} checks failed", reports.len());
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Gen(args) => {
            let envelope = battery::generate(
                args.problem.into(),
                args.n,
                resolve_seed(args.seed),
                args.rho,
            )?;
            let text = serde_json::to_string(&envelope)?;
            match &args.out {
                Some(path) => std::fs::write(path, format!("{text}\n"))?,
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Check(args) => {
            let (problem, certificate) = load_pair(&args)?;
            let cfg = RunConfig {
                seed: resolve_seed(args.seed),
                tol: args.tol,
                grid: args.grid,
                ..RunConfig::default()
            };
            let reports = battery::run_check(&problem, &certificate, &cfg)?;
            render(&reports, args.report)?;
            Ok(all_pass(&reports))
        }
        Command::Identities(args) => {
            let cfg = RunConfig {
                seed: resolve_seed(args.seed),
                tol: args.tol,
                trials: args.trials,
                ..RunConfig::default()
            };
            let reports = battery::run_identities(args.problem.into(), &cfg, args.break_fi)?;
            render(&reports, args.report)?;
            Ok(all_pass(&reports))
        }
        Command::Extract(args) => {
            let (problem, certificate) = load_pair(&args)?;
            let cfg = RunConfig {
                seed: resolve_seed(args.seed),
                tol: args.tol,
                grid: args.grid,
                ..RunConfig::default()
            };
            let reports = battery::run_extract(&problem, &certificate, &cfg)?;
            render(&reports, args.report)?;
            Ok(all_pass(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
