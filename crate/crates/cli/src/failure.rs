use std::fmt;

use isotropic_core::Error;

use crate::report::ReportDocument;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const ILL_POSED: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const MISMATCH: i32 = 5;
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    IllPosed(String),
    Budget(String),
    /// A verification run found unexpected mismatches; the report lists them.
    Mismatch(Box<ReportDocument>),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::IllPosed(_) => exit::ILL_POSED,
            Failure::Budget(_) => exit::BUDGET,
            Failure::Mismatch(_) => exit::MISMATCH,
            Failure::Io(_) => exit::IO,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::IllPosed(m) => write!(f, "ill-posed input: {m}"),
            Failure::Budget(m) => write!(f, "budget exhausted: {m}"),
            Failure::Mismatch(r) => write!(f, "verification failed: {} mismatch(es)", r.mismatches.len()),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::IllPosed(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
