//! Library side of the `pinched` command: file formats, subcommands and the
//! invariant suite, kept separate from argument parsing so they can be
//! tested directly.

pub mod commands;
pub mod error;
pub mod format;
pub mod verify;

pub use error::{CliError, CliResult};
