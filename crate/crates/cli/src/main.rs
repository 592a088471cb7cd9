use std::process::ExitCode;

use clap::Parser;
use phantom_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("phantom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
