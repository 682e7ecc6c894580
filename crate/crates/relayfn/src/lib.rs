//! File formats, reports and the batch driver around `relayfn-core`.

pub mod acceptance;
pub mod cli;
pub mod commands;
pub mod error;
pub mod graph_io;
pub mod instance_io;
pub mod query;
pub mod report;
pub mod scheme_io;

pub use commands::RunConfig;
pub use error::{CliError, Result};
pub use report::Output;
