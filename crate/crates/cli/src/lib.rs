//! File formats and subcommands behind the `cyclocat` binary.

pub mod commands;
pub mod format;
