//! File formats and command implementations for the `bellgems` CLI.
//!
//! Hamiltonian specs are JSON documents
//! `{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1.0, 0.5]]}]}`;
//! matrices are written as `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`.

pub mod commands;
pub mod config;
pub mod dump;
pub mod error;
pub mod spec_file;

pub use config::{Command, Emit, PairingChoice, RunConfig};
pub use error::CliError;
