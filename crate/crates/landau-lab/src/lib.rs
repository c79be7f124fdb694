//! Command-line studies on top of `landau-core`: config handling, artifact
//! writers and the trial-parallel Monte Carlo driver.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;

pub use error::LabError;
