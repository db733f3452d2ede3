//! File formats and the command-line front end for `hypermat-core`.

pub mod cli;
pub mod format;
