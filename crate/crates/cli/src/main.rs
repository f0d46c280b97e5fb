mod args;
mod commands;
mod files;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convert(a) => commands::convert(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Centrality(a) => commands::centrality(a),
        Command::Spyplot(a) => commands::spyplot(a),
        Command::DegreeFit(a) => commands::degree_fit_cmd(a),
        Command::Resistance(a) => commands::resistance(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("unires: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
