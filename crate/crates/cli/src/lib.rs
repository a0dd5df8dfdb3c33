//! Command-line front end: file formats, reports and subcommands for the
//! `leibniz` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, CliError, Outcome};
