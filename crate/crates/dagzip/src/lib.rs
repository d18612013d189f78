//! Text formats, benchmarks and the `dagzip` command-line tool.

pub mod bench;
pub mod cli;
pub mod format;
