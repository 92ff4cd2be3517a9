//! Command-line front end for counting, enumerating and cross-checking
//! maximal isotropic subgroups.

pub mod args;
pub mod cache;
pub mod commands;
pub mod counter;
pub mod failure;
pub mod reference;
pub mod report;

pub use failure::Failure;
pub use report::ReportDocument;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
