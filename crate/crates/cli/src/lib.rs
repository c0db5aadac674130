//! Command-line front end: matrix files, caching, run manifests and the
//! subcommands.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod matrix_file;
pub mod reproduce;
pub mod source_arg;
pub mod table;

pub use cli::run;
