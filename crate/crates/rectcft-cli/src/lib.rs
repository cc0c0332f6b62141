//! Command-line front end: theory tables, Monte Carlo runs, comparisons
//! and the closed-form self-checks.

pub mod compare;
pub mod config;
mod error;
pub mod oracle;
pub mod predict;
pub mod simulate;
pub mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use error::{CliError, Result};

use config::{ConfigArgs, RunConfig};
use table::Table;

#[derive(Debug, Parser)]
#[command(name = "rectcft", version, about = "Rectangle CFT predictions and cluster Monte Carlo checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a theory quantity on a grid and write CSV
    Predict(ConfigArgs),
    /// Run a Monte Carlo experiment; per-site CSV plus a JSON summary
    Simulate(ConfigArgs),
    /// Compare a theory table with a simulation (or theory) table; JSON report
    Compare {
        theory: PathBuf,
        other: PathBuf,
        #[command(flatten)]
        args: ConfigArgs,
    },
    /// Check every closed form against the general-kappa evaluation
    Oracle,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io { path: path.to_path_buf(), source: e }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(io_err(path))
}

fn emit_table(t: &Table, out: Option<&str>) -> Result<()> {
    match out {
        Some(p) => t.write_file(Path::new(p)),
        None => t.write_to(std::io::stdout().lock()).map_err(io_err(Path::new("<stdout>"))),
    }
}

/// Runs one command; returns the process exit status for completed runs
/// (0, or 1 when a check fails).
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Predict(args) => {
            let cfg = RunConfig::resolve(&args)?;
            let t = predict::predict(&cfg)?;
            emit_table(&t, cfg.output.as_deref())?;
            Ok(0)
        }
        Command::Simulate(args) => {
            let cfg = RunConfig::resolve(&args)?;
            let out = simulate::simulate(&cfg)?;
            let json = serde_json::to_string_pretty(&out.summary).expect("summary serializes");
            emit_table(&out.table, cfg.output.as_deref())?;
            match cfg.output.as_deref() {
                Some(p) => write_text(&Path::new(p).with_extension("json"), &(json + "\n"))?,
                None => eprintln!("{json}"),
            }
            Ok(0)
        }
        Command::Compare { theory, other, args } => {
            let cfg = RunConfig::resolve(&args)?;
            let t = Table::read_file(&theory)?;
            let o = Table::read_file(&other)?;
            let report = compare::compare(&t, &o, &cfg)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            match cfg.output.as_deref() {
                Some(p) => write_text(Path::new(p), &json)?,
                None => std::io::stdout().lock().write_all(json.as_bytes()).map_err(io_err(Path::new("<stdout>")))?,
            }
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::Oracle => {
            let r = oracle::oracle_report();
            print!("{}", r.text);
            Ok(if r.pass { 0 } else { 1 })
        }
    }
}
