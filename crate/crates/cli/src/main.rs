//! `prymcheck`: runs the verification pipeline on a JSON request.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use prymcheck_core::local::Place;
use prymcheck_core::report::{
    canonical_json, emit_outputs, read_request, run_report, summary_text, AnalysisRequest, Stages,
};
use prymcheck_core::scalar::parse_rational;
use prymcheck_core::sigma::AuditGrid;

#[derive(Parser)]
#[command(
    name = "prymcheck",
    version,
    about = "Exact verification of conic bundle threefolds and their Prym curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline.
    Analyze(Common),
    /// Divisor certificates only.
    CertifyDivisor(Common),
    /// Local solvability of the Prym curve (defaults to R and Q3).
    LocalPoints(Common),
    /// Degenerate sextic, signature profile and real topology.
    RealTopology(Common),
    /// Sampled surjectivity audit onto the lines avoiding the discriminant.
    SigmaAudit(Common),
}

#[derive(Args)]
struct Common {
    /// Request file (JSON).
    request: PathBuf,
    /// Comma-separated primes for the smoothness witnesses.
    #[arg(long, value_delimiter = ',')]
    witness_primes: Option<Vec<u64>>,
    #[arg(long)]
    hensel_depth: Option<u32>,
    #[arg(long)]
    audit_base_points: Option<usize>,
    #[arg(long)]
    audit_lines: Option<usize>,
    /// Write the signature profile as CSV.
    #[arg(long)]
    emit_csv: Option<PathBuf>,
    /// Seven comma-separated coefficients, from t0^6 down to t1^6.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    expected_sextic: Option<Vec<String>>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the human-readable summary here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

fn apply_flags(req: &mut AnalysisRequest, c: &Common, force_audit: bool) -> Result<()> {
    if let Some(p) = &c.witness_primes {
        req.witness_primes = Some(p.clone());
    }
    if let Some(d) = c.hensel_depth {
        req.hensel_depth = d;
    }
    if force_audit || c.audit_base_points.is_some() || c.audit_lines.is_some() {
        let grid = req.sigma_audit.get_or_insert_with(AuditGrid::default);
        if let Some(n) = c.audit_base_points {
            grid.base_points = n;
        }
        if let Some(n) = c.audit_lines {
            grid.lines = n;
        }
    }
    if let Some(cs) = &c.expected_sextic {
        if cs.len() != 7 {
            bail!(
                "--expected-sextic needs seven coefficients, got {}",
                cs.len()
            );
        }
        let parsed = cs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        req.expected_sextic = Some(parsed);
    }
    if let Some(p) = &c.emit_csv {
        req.outputs.csv = Some(p.clone());
    }
    if let Some(p) = &c.json {
        req.outputs.json = Some(p.clone());
    }
    if let Some(p) = &c.summary {
        req.outputs.summary = Some(p.clone());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (common, stages) = match &cli.command {
        Command::Analyze(c) => (c, Stages::all()),
        Command::CertifyDivisor(c) => (
            c,
            Stages {
                certificates: true,
                ..Stages::none()
            },
        ),
        Command::LocalPoints(c) => (
            c,
            Stages {
                local: true,
                ..Stages::none()
            },
        ),
        Command::RealTopology(c) => (
            c,
            Stages {
                sextic: true,
                topology: true,
                ..Stages::none()
            },
        ),
        Command::SigmaAudit(c) => (
            c,
            Stages {
                sigma: true,
                ..Stages::none()
            },
        ),
    };
    let mut req = read_request(&common.request)
        .with_context(|| format!("reading {}", common.request.display()))?;
    apply_flags(
        &mut req,
        common,
        matches!(cli.command, Command::SigmaAudit(_)),
    )?;
    if matches!(cli.command, Command::LocalPoints(_)) && req.local_places.is_empty() {
        req.local_places = vec![Place::Real, Place::Prime(3)];
    }
    if matches!(cli.command, Command::CertifyDivisor(_)) && req.certificates.is_empty() {
        bail!("the request has no certificates");
    }
    let report = run_report(&req, &stages);
    emit_outputs(&report, &req.outputs)?;
    if req.outputs.json.is_none() {
        print!("{}", canonical_json(&report));
    }
    if req.outputs.summary.is_none() {
        eprint!("{}", summary_text(&report));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
