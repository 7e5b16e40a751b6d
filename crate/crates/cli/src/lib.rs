//! Command-line driver for `succoef-core`: configuration, report formats and
//! the `bounds`, `verify`, `sweep`, `extremal` and `sample` commands.

#![warn(missing_docs)]

pub mod commands;
pub mod config;
pub mod report;

pub use commands::run;
pub use config::{Command, Format, RunConfig, UsageError};
pub use report::{Report, Table};
