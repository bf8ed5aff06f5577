//! Library side of the `gtvar` command-line tool: subcommand renderers, the
//! result cache and the sweep runner.

pub mod cache;
pub mod commands;
pub mod error;
pub mod sweep;

pub use error::{CliError, Result};
