//! Command-line pipeline: load inputs, validate, assemble, rank, report.

pub mod commands;
pub mod config;
pub mod error;
pub mod pipeline;

use config::{Cli, Command};
use error::{StageError, StageResult};

/// Worker count for the global thread pool.
pub const THREADS_ENV: &str = "RIGIDCOVER_THREADS";

pub fn dispatch(cli: &Cli) -> StageResult<()> {
    match &cli.command {
        Command::Validate(c) => commands::cmd_validate(c),
        Command::Run(c) => commands::cmd_run(c).map(drop),
        Command::Zigzag(c) => commands::cmd_zigzag(c).map(drop),
        Command::SearchStates(c) => commands::cmd_search_states(c).map(drop),
        Command::ExportSystem(c) => commands::cmd_export_system(c),
    }
}

pub fn exit_code(result: &Result<(), StageError>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) => e.stage.exit_code(),
    }
}
