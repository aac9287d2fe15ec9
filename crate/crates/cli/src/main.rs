use std::process::ExitCode;

use clap::Parser;
use photonic_cli::{main_with, Cli};

fn main() -> ExitCode {
    main_with(Cli::parse())
}
