mod commands;
mod config;
mod table;

use clap::Parser;
use config::{Cli, Command, UsageError};
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Symbol(a) => commands::cmd_symbol(a),
        Command::KernelLimit(a) => commands::cmd_kernel_limit(a),
        Command::Spectrum(a) => commands::cmd_spectrum(a),
        Command::Dynamics(a) => commands::cmd_dynamics(a),
        Command::Verify(a) => commands::cmd_verify(a),
    };
    match result {
        Ok(o) => {
            for p in &o.written {
                eprintln!("wrote {}", p.display());
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
