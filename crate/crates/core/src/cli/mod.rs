//! The `holokit` command line.
//!
//! Every subcommand prints (or writes to `--out`) one JSON report of the form
//! `{tool_version, command, resolved_config, checks, result}`. Exit codes:
//! 0 when every check passes, 1 when a check fails, 2 for usage and input
//! errors, 3 for numeric errors.

mod args;
mod commands;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub use args::*;
use commands::Outcome;

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Cauchy(CauchyCommand::Eval(a)) => commands::cauchy_eval_cmd(a),
        Command::Pompeiu(PompeiuCommand::Eval(a)) => commands::pompeiu_eval_cmd(a),
        Command::Dbar(DbarCommand::Solve(a)) => commands::dbar_solve_cmd(a),
        Command::Dirichlet(DirichletCommand::Solve(a)) => commands::dirichlet_solve_cmd(a),
        Command::Metric(MetricCommand::Eval(a)) => commands::metric_eval_cmd(a),
        Command::Indicatrix(IndicatrixCommand::Sample(a)) => commands::indicatrix_sample_cmd(a),
        Command::Poincare(PoincareCommand::Witness(a)) => commands::poincare_witness_cmd(a),
        Command::Bers(BersCommand::Verify(a)) => commands::bers_verify_cmd(a),
        Command::Osgood(OsgoodCommand::Analyze(a)) => commands::osgood_analyze_cmd(a),
        Command::Selftest(a) => commands::selftest_cmd(a),
    }
}

fn write_file(path: &std::path::Path, bytes: &[u8]) -> Result<(), String> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
    }
    std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Parses `argv` (program name first), runs the subcommand and writes the
/// report. Returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Numeric(e)) => {
            let _ = writeln!(stderr, "numeric error: {e}");
            return EXIT_NUMERIC;
        }
    };
    let report = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": outcome.command,
        "resolved_config": outcome.config,
        "checks": outcome.checks,
        "result": outcome.result,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    for (path, bytes) in &outcome.files {
        if let Err(msg) = write_file(path, bytes) {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    }
    match &outcome.out {
        Some(path) => {
            if let Err(msg) = write_file(path, text.as_bytes()) {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if outcome.checks.iter().all(|c| c.ok) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// [`run`] on the process's standard streams.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
