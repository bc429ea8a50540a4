//! `quasimod`: expand q-series, print coefficient tables, run identity checks.
//!
//! Exit status: 0 on success (including recorded discrepancies), 1 when a
//! check fails, 2 on usage errors.

mod output;
mod targets;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quasimod::verify::{self, RunOptions, Status, VerificationReport};

#[derive(Parser, Debug)]
#[command(
    name = "quasimod",
    version,
    about = "Exact q-series and quasimodular form identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients of a named series.
    Expand(Common),
    /// Print a coefficient table (cv, cc, cc_tilde, v, w).
    Coeffs(Common),
    /// Run one identity check.
    Verify(Common),
    /// Run every registered identity check.
    Suite(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Series, table or check id.
    #[arg(long)]
    target: Option<String>,
    /// Truncation order. Defaults to 60 for `expand`; checks use their own default.
    #[arg(long)]
    order: Option<usize>,
    /// Index or weight bound.
    #[arg(long)]
    t: Option<u32>,
    /// Reduce coefficients modulo this integer.
    #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
    modulus: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report elapsed_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

const DEFAULT_ORDER: usize = 60;
const DEFAULT_T: u32 = 4;

struct Usage(String);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, Usage> {
    match command {
        Command::Expand(c) => {
            let target = require_target(&c)?;
            let order = c.order.unwrap_or(DEFAULT_ORDER);
            let series = targets::expand(target, order, c.t.unwrap_or(DEFAULT_T)).map_err(Usage)?;
            let text = match c.modulus {
                Some(m) => {
                    let residues = series
                        .reduce_mod(m)
                        .map_err(|e| Usage(format!("cannot reduce {target} mod {m}: {e}")))?;
                    output::residues(
                        target,
                        m,
                        residues.residues(),
                        c.format.unwrap_or(Format::Text),
                    )
                }
                None => output::series(target, &series, c.format.unwrap_or(Format::Text)),
            };
            emit(&c, &text)?;
            Ok(0)
        }
        Command::Coeffs(c) => {
            let target = require_target(&c)?;
            let table = targets::table(target, c.t.unwrap_or(DEFAULT_T)).map_err(Usage)?;
            emit(&c, &output::table(&table, c.format.unwrap_or(Format::Text)))?;
            Ok(0)
        }
        Command::Verify(c) => {
            let target = require_target(&c)?;
            let spec = verify::find_check(target)
                .ok_or_else(|| Usage(format!("unknown identity '{target}'")))?;
            let mut report = verify::run_check(spec, options(&c));
            if c.no_timing {
                report.elapsed_ms = 0;
            }
            let text = output::reports(
                std::slice::from_ref(&report),
                c.format.unwrap_or(Format::Text),
                false,
            );
            emit(&c, &text)?;
            if report.status == Status::RecordedDiscrepancy {
                eprintln!(
                    "warning: {} is a recorded discrepancy: {}",
                    report.identity_id,
                    report.note.as_deref().unwrap_or("")
                );
            }
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Suite(c) => {
            let mut reports = verify::run_suite(options(&c));
            if c.no_timing {
                reports.iter_mut().for_each(|r| r.elapsed_ms = 0);
            }
            emit(
                &c,
                &output::reports(&reports, c.format.unwrap_or(Format::Json), true),
            )?;
            Ok(exit_code(&reports))
        }
    }
}

fn require_target(c: &Common) -> Result<&str, Usage> {
    c.target
        .as_deref()
        .ok_or_else(|| Usage("--target is required".into()))
}

fn options(c: &Common) -> RunOptions {
    RunOptions {
        order: c.order,
        t: c.t,
    }
}

fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

fn emit(c: &Common, text: &str) -> Result<(), Usage> {
    match &c.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}
