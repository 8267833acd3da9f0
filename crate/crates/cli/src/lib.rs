//! Command-line front end: structure files in, deterministic line-per-check
//! reports out.

pub mod commands;
pub mod recheck;
pub mod report;
pub mod suite;
