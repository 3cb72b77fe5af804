//! `krall-verify verify ...` and `krall-verify props ...`.
//! Exit status: 0 all checks pass, 1 some check fails, 2 bad configuration.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use krall_discrete::families::{parse_param, Family};
use krall_discrete::sets::IndexSet;
use krall_discrete::verify::{
    emit_report, run_suite, verify_conjecture, CheckName, Format, Suite, VerifyConfig, VerifyReport,
};
use krall_discrete::{Error, Polynomial, Result};

#[derive(Parser)]
#[command(name = "krall-verify", version, about = "Exact checks for Krall-type discrete polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the conjecture pipeline for one family and root data.
    Verify(VerifyArgs),
    /// Run a seeded property suite.
    Props(PropsArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Record wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config; flags given on the command line override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long = "N", allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long = "F1")]
    f1: Option<String>,
    #[arg(long = "F2")]
    f2: Option<String>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Ascending coefficients, comma separated.
    #[arg(long = "S", allow_hyphen_values = true)]
    s: Option<String>,
    /// Comma separated check names.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PropsArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

fn build_config(args: &VerifyArgs) -> Result<VerifyConfig> {
    let mut cfg: Option<VerifyConfig> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Some(serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?)
        }
        None => None,
    };
    if let Some(fam) = &args.family {
        let family: Family = fam.parse()?;
        let a = match (&args.a, &cfg) {
            (Some(a), _) => parse_param("a", a)?,
            (None, Some(c)) => c.a.clone(),
            (None, None) => return Err(Error::InvalidParameter("--a is required".into())),
        };
        match cfg.as_mut() {
            Some(c) => c.family = family,
            None => cfg = Some(VerifyConfig::new(family, a)),
        }
    }
    let mut cfg = cfg.ok_or_else(|| Error::InvalidParameter("--family or --config is required".into()))?;
    if let Some(a) = &args.a {
        cfg.a = parse_param("a", a)?;
    }
    if let Some(c) = &args.c {
        cfg.c = Some(parse_param("c", c)?);
    }
    if let Some(n) = &args.n {
        cfg.n = Some(parse_param("N", n)?);
    }
    if let Some(f1) = &args.f1 {
        cfg.f1 = IndexSet::parse(f1)?;
    }
    if let Some(f2) = &args.f2 {
        cfg.f2 = Some(IndexSet::parse(f2)?);
    }
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    if let Some(s) = &args.s {
        let coeffs = s.split(',').map(|t| parse_param("S", t)).collect::<Result<Vec<_>>>()?;
        cfg.s = Polynomial::new(coeffs);
    }
    if let Some(checks) = &args.checks {
        cfg.checks = checks
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(CheckName::parse)
            .collect::<Result<_>>()?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    Ok(cfg)
}

fn write(report: &VerifyReport, output: &Output) -> Result<()> {
    let format: Format = output.format.parse()?;
    let bytes = emit_report(report, format);
    match &output.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    let (mut report, output) = match &cli.command {
        Command::Verify(args) => (verify_conjecture(&build_config(args)?), &args.output),
        Command::Props(args) => {
            let suite: Suite = args.suite.parse()?;
            (run_suite(suite, args.seed, args.trials), &args.output)
        }
    };
    if output.timing {
        report.meta.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    write(&report, output)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("krall-verify: {e}");
            ExitCode::from(2)
        }
    }
}
