use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = wishcond::Cli::parse();
    match wishcond::run(&cli) {
        Ok(outcome) => outcome.into(),
        Err(err) => {
            eprintln!("wishcond: {err}");
            ExitCode::from(2)
        }
    }
}
