//! Runs the significance-threshold study end to end: parallel trials, CSV and
//! Markdown reports, and PGM renderings of the near-threshold pairs.

pub mod cli;
pub mod error;
pub mod figures;
pub mod parallel;
pub mod pgm;
pub mod report;

pub use error::CliError;
pub use parallel::run_study_parallel;
