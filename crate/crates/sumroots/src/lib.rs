//! Command-line front end for `sumroots-core`: argument handling, the
//! JSON-lines result store, record formats and CSV reports.

pub mod cli;
pub mod error;
pub mod report;
pub mod store;
pub mod wire;

pub use error::{CliError, CliResult};
