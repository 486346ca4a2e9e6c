//! The `mdseries` command-line tool as a library, so tests can drive it
//! without a subprocess.

pub mod args;
pub mod input;
pub mod numeric;
pub mod report;
pub mod run;

pub use args::Cli;
pub use run::{run, Outcome};
