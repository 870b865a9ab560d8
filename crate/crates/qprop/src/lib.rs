//! File formats and command-line front end for `qprop-core`.

pub mod cli;
pub mod error;
pub mod report;
pub mod schema;

pub use cli::{execute, Cli};
pub use error::CliError;
