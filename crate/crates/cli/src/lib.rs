//! Command-line front end for `meetjoin-core`: poset files, function tables,
//! JSON and CSV reports.

pub mod error;
pub mod input;
pub mod report;
pub mod run;

pub use error::{CliError, Result};
pub use run::{run, Cli, Output};
