//! Command-line front end of `ringdec-core`: JSON run configurations,
//! spectrum and decoherence exports, parameter sweeps and figure presets.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;

pub use cli::{run, Cli};
pub use error::{CliError, Result};
