//! Batch front end: one subcommand per run, CSV out, exit codes
//! 0 (success), 2 (usage) and 3 (domain or cap violation).

// NaN must fail these range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, SUBCOMMANDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Parses `argv` (program name first), runs one subcommand and writes its
/// CSV to `--out` or `stdout`. Nothing is written to the CSV destination
/// unless the run succeeds.
pub fn dispatch(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let argv = match config::expand_config(argv, SUBCOMMANDS) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };

    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_DOMAIN;
        }
    };
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    let bytes = outcome.table.to_csv();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(&bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}
