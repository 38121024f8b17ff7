mod cli;
mod commands;
mod config;
mod error;
mod report;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use config::RunConfig;
use error::CliError;

/// Caps the rayon pool from `REDUCTMINER_THREADS`; unset or 0 leaves the default.
fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("REDUCTMINER_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("REDUCTMINER_THREADS={raw:?} is not a non-negative integer")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::compute(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match cli.command {
        Command::Describe(args) => {
            let config = RunConfig::load(&args.common)?;
            config.validate()?;
            commands::describe(&config)
        }
        Command::Reduce(args) => {
            let mut config = RunConfig::load(&args.common)?;
            if let Some(m) = args.mode {
                config.mode = m.into();
            }
            if !args.check.is_empty() {
                config.check = args
                    .check
                    .iter()
                    .map(|g| g.split(',').map(|a| a.trim().to_string()).filter(|a| !a.is_empty()).collect())
                    .collect();
            }
            config.validate()?;
            commands::reduce(&config)
        }
        Command::Tree(args) => {
            let mut config = RunConfig::load(&args.common)?;
            config.apply_tree(&args.params);
            config.apply_filter(&args.filter);
            config.validate()?;
            commands::tree(&config)
        }
        Command::Rules(args) => {
            let mut config = RunConfig::load(&args.common)?;
            if args.rules.is_some() {
                config.rules = args.rules;
                config.generate = None;
            }
            config.apply_generate(args.generate);
            if let Some(m) = args.mode {
                config.mode = m.into();
            }
            config.apply_tree(&args.params);
            config.apply_filter(&args.filter);
            config.compare |= args.compare;
            if let Some(t) = args.tolerance {
                config.tolerance = t;
            }
            config.validate()?;
            commands::rules(&config)
        }
        Command::Eval(args) => {
            let mut config = RunConfig::load(&args.common)?;
            if args.test.is_some() {
                config.test = args.test;
            }
            if args.rules.is_some() {
                config.rules = args.rules;
            }
            config.apply_tree(&args.params);
            config.compare |= args.compare;
            if let Some(t) = args.tolerance {
                config.tolerance = t;
            }
            config.validate()?;
            commands::eval(&config)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("reductminer: {e}");
            ExitCode::from(e.code)
        }
    }
}
