//! Command-line front end: function registry, experiment drivers and
//! CSV/JSON output with a hashed run manifest.

pub mod args;
pub mod commands;
pub mod error;
pub mod expr;
pub mod output;
pub mod reference;
pub mod registry;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "PHANTOM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "phantom",
    version,
    about = "Phantom-function Fourier extensions and phantom-node interpolation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier coefficients of a blended periodic extension.
    Series(commands::series::SeriesArgs),
    /// Trigonometric interpolation with or without phantom nodes.
    Interp(commands::interp::InterpArgs),
    /// Error-ratio tables for several functions.
    Table(commands::table::TableArgs),
    /// Minimax search for phantom values.
    Optimize(commands::optimize::OptimizeArgs),
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::numerical(e.to_string()))
}

pub fn run(cli: &Cli) -> CliResult<Vec<PathBuf>> {
    match &cli.command {
        Command::Series(a) => commands::series::run(a),
        Command::Interp(a) => commands::interp::run(a),
        Command::Table(a) => thread_pool()?.install(|| commands::table::run(a)),
        Command::Optimize(a) => commands::optimize::run(a),
    }
}
