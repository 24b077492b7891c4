//! The `bn` command-line tool: argument handling, commands and graph export.

pub mod cli;
pub mod export;
