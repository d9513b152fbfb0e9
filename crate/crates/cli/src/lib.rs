//! Command-line front end: argument parsing, group files and output
//! documents. The `minfusion` binary is a thin wrapper around [`run`].

pub mod app;
pub mod document;
pub mod group_file;

pub use app::{run, Outcome, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
