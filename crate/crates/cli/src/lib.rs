//! File formats, reports and the command layer of the `scattered` binary.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::CliError;
