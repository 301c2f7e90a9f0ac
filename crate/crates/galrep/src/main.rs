use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = galrep::cli::Cli::parse();
    match galrep::cli::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
