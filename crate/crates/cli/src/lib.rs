//! Library side of the `ncho` command: configuration, dispatch and output.
//!
//! The binary only parses flags into a [`RunConfig`]; everything else lives
//! here so it can be driven and tested without a process boundary.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Command, GridSpec, OutputFormat, Range, RunConfig};
pub use error::CliError;
pub use output::{emit_plot_data, write_csv, write_json, write_plot_data};
pub use run::{render_repro, run, Payload, ResultEnvelope};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "NCHO_OUTPUT_DIR";
