//! liecert: verify property (P) for the distinguished non-regular
//! nilpotent orbits of E6, E7, E8 and F4, entirely in exact arithmetic.
//!
//! Exit codes: 0 all selected orbits verified (and matched the catalog's
//! expected invariants unless the diff is skipped); 1 verification or diff
//! failure; 2 configuration or I/O errors.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use liecert::catalog::{self, OrbitRecord};
use liecert::report::build_report;
use liecert::rootsystem::SimpleType;
use liecert::run::{select_records, verify_records, RunOptions};
use liecert::selftest;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "liecert", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one orbit, one algebra, or the full catalog.
    Verify(VerifyArgs),
    /// List catalog orbits and their expected invariants.
    List(ListArgs),
    /// Run the built-in algebraic property suites on small fixtures.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one algebra (E6, E7, E8 or F4).
    #[arg(long)]
    algebra: Option<String>,
    /// Restrict to one orbit (requires --algebra).
    #[arg(long, requires = "algebra")]
    ordinal: Option<u32>,
    /// Catalog file; defaults to the bundled catalog.
    #[arg(long, env = "LIECERT_CATALOG")]
    catalog: Option<PathBuf>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker count; defaults to the number of selected orbits.
    #[arg(long)]
    jobs: Option<usize>,
    /// Do not diff computed invariants against the catalog's expected block.
    #[arg(long)]
    skip_expected_diff: bool,
    /// Include the redundant top-weight checks in the report.
    #[arg(long)]
    redundant_checks: bool,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, env = "LIECERT_CATALOG")]
    catalog: Option<PathBuf>,
}

fn load_records(path: &Option<PathBuf>) -> anyhow::Result<Vec<OrbitRecord>> {
    let text = match path {
        None => catalog::bundled_catalog().to_string(),
        Some(p) => std::fs::read_to_string(p)
            .with_context(|| format!("reading catalog {}", p.display()))?,
    };
    Ok(catalog::load_catalog(&text)?)
}

fn parse_algebra(name: &Option<String>) -> anyhow::Result<Option<SimpleType>> {
    match name {
        None => Ok(None),
        Some(s) => Ok(Some(
            SimpleType::parse(s).map_err(|e| anyhow!("{e}"))?,
        )),
    }
}

fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Returns the exit code for `verify`.
fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let records = load_records(&args.catalog)?;
    let algebra = parse_algebra(&args.algebra)?;
    let selected = select_records(&records, algebra, args.ordinal);
    if selected.is_empty() {
        return Err(anyhow!(
            "no such orbit: algebra {:?}, ordinal {:?}",
            args.algebra,
            args.ordinal
        ));
    }
    let opts = RunOptions {
        e_candidate: 0,
        jobs: args.jobs,
        skip_expected_diff: args.skip_expected_diff,
    };
    let runs = verify_records(&selected, &opts);
    for run in &runs {
        let status = match &run.result {
            Ok(v) if run.is_clean() => format!("P_holds ({} ms)", v.elapsed_ms),
            Ok(v) if !v.outcome.property_holds => "NOT certified".to_string(),
            Ok(v) => format!("expected-value mismatch: {}", v.expected_diff.join("; ")),
            Err(e) => format!("error: {e}"),
        };
        eprintln!("{} #{}: {}", run.record.algebra, run.record.ordinal, status);
    }
    let report = build_report(&runs, args.redundant_checks);
    let rendered = match args.format {
        Format::Json => report.to_json_pretty(),
        Format::Markdown => report.to_markdown(),
    };
    match &args.out {
        Some(path) => write_atomic(path, &rendered)?,
        None => {
            std::io::stdout().write_all(rendered.as_bytes())?;
        }
    }
    Ok(if runs.iter().all(|r| r.is_clean()) { 0 } else { 1 })
}

fn cmd_list(args: &ListArgs) -> anyhow::Result<u8> {
    let records = load_records(&args.catalog)?;
    let algebra = parse_algebra(&args.algebra)?;
    let selected = select_records(&records, algebra, None);
    println!(
        "{:<8} {:<8} {:<26} {:>6} {:>6} {:>5}",
        "algebra", "ordinal", "characteristic", "dim_ge", "dim_z", "m_r"
    );
    for r in &selected {
        let chars: Vec<String> = r.characteristic.iter().map(i64::to_string).collect();
        println!(
            "{:<8} {:<8} {:<26} {:>6} {:>6} {:>5}",
            r.algebra.to_string(),
            r.ordinal,
            chars.join(","),
            r.expected.dim_centralizer,
            r.expected.dim_centre,
            r.expected.m_r
        );
    }
    Ok(0)
}

fn cmd_selftest() -> u8 {
    let outcome = selftest::run(None);
    for name in &outcome.passed {
        println!("suite {name}: ok");
    }
    for (name, msg) in &outcome.failures {
        println!("suite {name}: FAILED ({msg})");
    }
    println!(
        "selftest: {} passed, {} failed in {} ms",
        outcome.passed.len(),
        outcome.failures.len(),
        outcome.elapsed_ms
    );
    if outcome.ok() {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::List(args) => cmd_list(args),
        Command::Selftest => Ok(cmd_selftest()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
