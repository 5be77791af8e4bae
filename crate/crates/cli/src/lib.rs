//! Command-line front end for `nalpha`: configuration, output formats and
//! the subcommands.

pub mod commands;
pub mod config;
pub mod output;
