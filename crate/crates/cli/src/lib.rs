//! File formats, reports and command implementations behind the `lbh` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::CliError;
