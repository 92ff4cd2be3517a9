//! The JSON report emitted by every subcommand.
//!
//! Field order is fixed by the struct declarations and every map is a
//! `BTreeMap`, so two runs with the same inputs serialize identically except
//! for the `runtime` block.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use isotropic_core::CountWarning;

use crate::TOOL_VERSION;

pub const SCHEMA_ID: &str = "isocount-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    /// Arguments after the program name, as given.
    pub argv: Vec<String>,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<CountWarning>,
    pub mismatches: Vec<Mismatch>,
    pub status: Status,
    /// The only non-deterministic part of a report.
    pub runtime: Runtime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub suite: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Runtime {
    pub elapsed_ms: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

impl ReportDocument {
    pub fn new(command: &str, argv: &[String], inputs: Value) -> Self {
        Self {
            schema: SCHEMA_ID.into(),
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            argv: argv.to_vec(),
            inputs,
            results: Value::Null,
            warnings: Vec::new(),
            mismatches: Vec::new(),
            status: Status::Ok,
            runtime: Runtime::default(),
        }
    }

    pub fn push_mismatch(&mut self, m: Mismatch) {
        self.status = Status::Mismatch;
        self.mismatches.push(m);
    }

    pub fn push_warning(&mut self, w: CountWarning) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }

    /// Copy with the runtime block zeroed, for determinism comparisons.
    pub fn without_runtime(&self) -> Self {
        Self { runtime: Runtime::default(), ..self.clone() }
    }
}
