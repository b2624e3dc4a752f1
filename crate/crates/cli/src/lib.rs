//! Command-line front end: argument parsing, input resolution and output.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod input;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::Output;
use input::{CliError, CliResult};

fn dispatch(cli: &Cli) -> CliResult<(Output, i32)> {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Sharp { input } => commands::sharp_cmd(input, g)?,
        Command::TiltReduce { input } => commands::tilt_reduce(input, g)?,
        Command::Theta { input } => commands::theta_cmd(input, g)?,
        Command::Witt(w) => commands::witt_cmd(w, g)?,
        Command::Newton { input } => commands::newton_cmd(input, g)?,
        Command::Transfer { n, input } => commands::transfer_cmd(*n, input, g)?,
        Command::Root { input } => commands::root_cmd(input, g)?,
        Command::Decompose { c, input } => commands::decompose_cmd(*c, input, g)?,
        Command::Approx { c, eps, input } => commands::approx_cmd(c, eps, input, g)?,
        Command::Verify { c, eps, f, g: gg } => commands::verify_cmd(c, eps, f, gg, g)?,
        Command::Disc(d) => commands::disc_cmd(d, g)?,
        Command::Toric(t) => commands::toric_cmd(t, g)?,
        Command::Suite { only } => {
            let seed = g.seed.unwrap_or(perfectoid_core::suite::DEFAULT_SEED);
            let outcomes =
                suite::run(only, Some(seed)).map_err(|bad| CliError::Usage(format!("no acceptance criterion {bad}")))?;
            let code = if outcomes.iter().all(|o| o.ok()) { 0 } else { 1 };
            let out = Output { json: suite::to_json(&outcomes, seed), text: suite::to_text(&outcomes) };
            return Ok((out, code));
        }
    };
    Ok((out, 0))
}

/// Runs one invocation and returns the process exit code: 0 on success,
/// 1 on a domain error or failed suite, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((o, code)) => {
            let _ = match cli.global.format {
                Format::Json => out.write_all(fixtures::canonical_string(&o.json).as_bytes()),
                Format::Text => writeln!(out, "{}", o.text),
            };
            code
        }
        Err(e) => {
            let _ = match cli.global.format {
                Format::Json => out.write_all(fixtures::canonical_string(&e.to_json()).as_bytes()),
                Format::Text => writeln!(err, "error ({}): {e}", e.kind()),
            };
            e.exit_code()
        }
    }
}
