use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gpfp_cli::{run, Cli, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let outcome = run(&config);
    if let Some(err) = &outcome.error {
        eprintln!("{err}");
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.output.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(outcome.exit_code as u8)
}
