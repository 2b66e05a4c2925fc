use std::process::ExitCode;

use clap::Parser;
use opinion_mining::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.to_record());
            ExitCode::FAILURE
        }
    }
}
