//! Command-line front end: single-field reports, range scans, and
//! formula-against-oracle verification with CI-friendly exit codes.

pub mod args;
pub mod commands;
pub mod format;
pub mod record;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use commands::{EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
pub use format::{parse, render, Format};
pub use record::{OutputRecord, QuadRecord, VerifyStatus};

/// Parse `argv` and run it. Usage errors exit with code 1; `--help` and
/// `--version` exit with 0.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => commands::execute(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            code
        }
    }
}
