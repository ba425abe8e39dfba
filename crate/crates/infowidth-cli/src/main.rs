use std::process::ExitCode;

use clap::Parser;

use infowidth_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match infowidth_cli::run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
