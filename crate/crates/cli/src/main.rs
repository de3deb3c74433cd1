use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use pingpong_cli::commands::{run, Cli, Output};
use pingpong_cli::CliError;

fn emit(out: Output) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match out {
        Output::Stdout(s) => stdout.write_all(s.as_bytes())?,
        Output::File(path, body, msg) => {
            std::fs::write(&path, body)?;
            stdout.write_all(msg.as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(emit) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
