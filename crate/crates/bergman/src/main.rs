use std::io::Write;
use std::process::ExitCode;

use bergman::cli::{run, Cli};
use bergman::error::CliError;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli).and_then(|o| emit(&o).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("bergman: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(o: &bergman::cli::Outcome) -> Result<(), CliError> {
    let text = o.render();
    match &o.common.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
