//! Command-line front end for the enumeration pipeline: run enumerations,
//! extract central groupoids, verify external tables and matrices, and
//! export Graphviz views. The binary is `upp2`.

pub mod commands;
pub mod dot;
pub mod error;
pub mod jsonl;
pub mod tablefmt;
pub mod verify;

pub use error::{CliError, CliResult};
