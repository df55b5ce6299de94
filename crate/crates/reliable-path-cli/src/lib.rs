//! Library half of the `relpath` binary: document formats, instance
//! generation, and the command implementations, exposed so integration
//! tests drive exactly the code the binary runs.

pub mod commands;
pub mod document;
pub mod generate;

pub use commands::{BenchParams, Outcome};
pub use generate::RandomNetParams;
