//! Sweeps, caches and JSON reports around the `ffchar` library, and the
//! `ffchar` command-line tool.

pub mod cache;
pub mod checks;
pub mod cli;
pub mod context;
pub mod report;
pub mod runner;
pub mod spec;

/// Bad command-line input; exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub use cache::Cache;
pub use report::Report;
pub use runner::run_sweep;
pub use spec::{Backend, Check, Selector, SweepSpec};
