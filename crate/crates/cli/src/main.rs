use std::process::ExitCode;

use clap::Parser;
use quasitoric_cli::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    ExitCode::from(run(cli, &mut out, &mut err))
}
