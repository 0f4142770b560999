//! Library side of the dwp command-line tool: sweep configuration,
//! machine-readable records, and the sweep engine itself. The binary in
//! main.rs is a thin clap layer over this and the dwp crate.

pub mod config;
pub mod records;
pub mod sweep;

pub use config::{CSelector, GSelector, OutputFormat, SweepConfig, SweepTask};
pub use records::ResultRecord;
