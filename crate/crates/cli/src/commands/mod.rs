pub mod count;
pub mod enumerate;
pub mod table;
pub mod verify;

use std::fs;

use isotropic_core::ptype::ParseTypeError;
use isotropic_core::PolarizationType;

use crate::args::OutputArgs;
use crate::failure::Failure;
use crate::report::ReportDocument;

pub fn parse_type(s: &str) -> Result<PolarizationType, Failure> {
    s.parse().map_err(|e: ParseTypeError| match e {
        ParseTypeError::BadInteger(_) => Failure::Usage(e.to_string()),
        ParseTypeError::Invalid(inner) => Failure::IllPosed(inner.to_string()),
    })
}

/// Prints the report (JSON or the given text) and writes it if requested.
pub fn emit(report: &ReportDocument, text: &str, output: &OutputArgs) -> Result<(), Failure> {
    if output.json {
        print!("{}", report.to_json());
    } else {
        print!("{text}");
        for w in &report.warnings {
            eprintln!("warning [{}]: {}", w.code, w.message);
        }
    }
    if let Some(path) = &output.report {
        fs::write(path, report.to_json())?;
    }
    Ok(())
}
