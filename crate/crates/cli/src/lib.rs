//! Library half of the `critgb` binary, so the command logic is testable
//! without spawning processes.

pub mod commands;

pub use commands::{CliError, CliResult, Kind};
