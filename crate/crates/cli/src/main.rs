//! Binary entry point. Exit codes: 0 success, 1 runtime failure,
//! 2 usage error.

use clap::Parser;
use sup_cli::commands::{dispatch, Cli};
use sup_cli::error::UsageError;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on bad arguments and 0 on --help/--version
        Err(err) => err.exit(),
    };
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err:#}");
        let code = if err.is::<UsageError>() { 2 } else { 1 };
        std::process::exit(code);
    }
}
