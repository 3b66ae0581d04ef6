use std::io::Write;
use std::process::ExitCode;

use barnes_cli::{render, run, Cli, CliError};
use clap::Parser;

fn emit(cli: &Cli) -> Result<(), CliError> {
    let record = run(cli)?;
    let text = render(&record, cli.common.format);
    match &cli.common.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match emit(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("barnes: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
