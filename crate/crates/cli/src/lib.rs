//! Command-line front end: argument and config parsing, run dispatch and
//! exit-status mapping.

pub mod args;
pub mod config;
pub mod run;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use robin_gap::RobinParam;

pub use config::RunConfig;
pub use run::{execute, run, Artifact, CliError, EXIT_ENGINE, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "ROBIN_GAP_THREADS";

/// Parses a Robin parameter: a decimal literal or `inf` (Dirichlet).
pub fn parse_bc(text: &str) -> Result<RobinParam, String> {
    text.parse::<RobinParam>().map_err(|e| e.to_string())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = match text.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => {
            return Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {text:?}"
            )))
        }
    };
    // a pool already built (e.g. by an earlier run in the same process) is kept
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn load_config(path: &std::path::Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

fn resolve(cli: args::Cli) -> Result<RunConfig, CliError> {
    match (cli.config, cli.command) {
        (Some(path), None) => load_config(&path),
        (None, Some(sub)) => Ok(sub.into_config()),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --config or a subcommand, not both".into(),
        )),
        (None, None) => Err(CliError::Usage("missing subcommand (try --help)".into())),
    }
}

/// Runs the CLI on `argv`, printing the artifact to stdout (unless written to
/// a file) and diagnostics to stderr. Returns the exit status.
pub fn main_with<I, A>(argv: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = configure_threads()
        .and_then(|_| resolve(cli))
        .and_then(|config| {
            let artifact = run(&config)?;
            if config.output.is_none() {
                std::io::stdout().write_all(artifact.body.as_bytes())?;
            }
            Ok(artifact)
        });
    match result {
        Ok(artifact) => artifact.exit_code(),
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("robin-gap: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_bc_examples() {
        assert_eq!(parse_bc("inf"), Ok(RobinParam::Dirichlet));
        let third = parse_bc("-0.318309886").unwrap().value().unwrap();
        assert!((third + 1.0 / std::f64::consts::PI).abs() < 1e-9);
        for bad in ["abc", "nan", "", "1e999"] {
            assert!(parse_bc(bad).is_err(), "{bad}");
        }
    }
}
