use std::process::ExitCode;

use clap::Parser;
use lrk_cli::output::write_json;
use lrk_cli::run::run;
use lrk_cli::{Cli, CliError};

fn execute(cli: &Cli) -> Result<(), CliError> {
    let config = cli.resolve()?;
    let report = run(&config)?;
    report.table.write(&config, cli.out.as_deref())?;
    if let Some(path) = &cli.json {
        write_json(&report.summary, path)?;
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if !report.oracle_failures.is_empty() {
        return Err(CliError::Oracle(format!("failed checks: {}", report.oracle_failures.join(", "))));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
