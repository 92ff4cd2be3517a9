use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::json;

use isotropic_core::closed_forms::nu_pp_by_type;
use isotropic_core::enumeration::census_by_type;
use isotropic_core::{CountMethod, PolarizationType, Strategy, TypeKind};

use super::emit;
use crate::args::{TableArgs, TablePreset};
use crate::counter::Counter;
use crate::failure::Failure;
use crate::reference;
use crate::report::{Mismatch, ReportDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    /// Published value is wrong; computed value equals the pinned one.
    KnownConflict,
    Mismatch,
    Unpublished,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuCell {
    pub divisors: [u64; 2],
    pub computed: Option<String>,
    pub method: Option<CountMethod>,
    pub published: Option<u64>,
    pub pinned: Option<u64>,
    pub status: CellStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    pub label: TypeKind,
    pub invariant_exponents: Vec<u32>,
    pub formula: String,
    pub census: u64,
    pub matches: bool,
}

/// Computes one ν(d1, d2) cell and compares it with the published and
/// pinned values.
pub fn nu_cell(counter: &mut Counter, d1: u64, d2: u64) -> Result<NuCell, Failure> {
    let published = reference::published(d1, d2);
    let pin = reference::pinned(d1, d2);
    let ptype = PolarizationType::new(vec![d1, d2])?;
    let mut cell = NuCell {
        divisors: [d1, d2],
        computed: None,
        method: None,
        published,
        pinned: pin.map(|p| p.0),
        status: CellStatus::Unpublished,
        note: pin.map(|p| p.1.to_string()),
    };
    match counter.nu(&ptype) {
        Ok(v) => {
            let computed = v.value.to_string();
            cell.status = match (published, pin) {
                (_, Some((pinned, _))) if computed == pinned.to_string() => CellStatus::KnownConflict,
                (Some(p), None) if computed == p.to_string() => CellStatus::Match,
                (None, None) => CellStatus::Unpublished,
                _ => CellStatus::Mismatch,
            };
            cell.computed = Some(computed);
            cell.method = Some(v.method);
        }
        Err(Failure::Budget(m)) => {
            cell.status = CellStatus::BudgetExceeded;
            cell.note = Some(m);
        }
        Err(e) => return Err(e),
    }
    Ok(cell)
}

pub fn published_cells(counter: &mut Counter) -> Result<Vec<NuCell>, Failure> {
    reference::PUBLISHED_TABLE.iter().map(|&(d1, d2, _)| nu_cell(counter, d1, d2)).collect()
}

fn custom_cells(counter: &mut Counter, max_d: u64) -> Result<Vec<NuCell>, Failure> {
    let mut pairs = Vec::new();
    for d in 2..=max_d {
        pairs.push((1, d));
    }
    for d in 2..=max_d {
        pairs.push((d, d));
    }
    for d2 in 2..=max_d {
        for d1 in (2..d2).filter(|d1| d2 % d1 == 0) {
            pairs.push((d1, d2));
        }
    }
    pairs.into_iter().map(|(a, b)| nu_cell(counter, a, b)).collect()
}

pub fn type_rows(p: u64, n: u32, counter: &Counter) -> Result<Vec<TypeRow>, Failure> {
    let census = census_by_type(p, n, &counter.budget)?;
    TypeKind::admissible(n)
        .into_iter()
        .map(|kind| {
            let formula = nu_pp_by_type(p, n, kind)?;
            let c = census.get(kind);
            Ok(TypeRow {
                label: kind,
                invariant_exponents: kind.invariant_exponents(n),
                matches: formula == c.into(),
                formula: formula.to_string(),
                census: c,
            })
        })
        .collect()
}

fn render_cells(cells: &[NuCell]) -> String {
    let mut s = format!("{:<12} {:>10} {:>10} {:>10}  {}\n", "cell", "computed", "published", "pinned", "status");
    for c in cells {
        let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>10} {:>10}  {:?}",
            format!("nu({},{})", c.divisors[0], c.divisors[1]),
            c.computed.as_deref().unwrap_or("-"),
            opt(c.published),
            opt(c.pinned),
            c.status
        );
    }
    s
}

pub fn run(args: &TableArgs, argv: &[String]) -> Result<ReportDocument, Failure> {
    let start = Instant::now();
    let budget = args.budget.budget()?;
    let mut counter = Counter::new(budget, Strategy::Auto, args.cache.open()?);
    let preset = args.preset.to_possible_value().map(|v| v.get_name().to_string());
    let mut report = ReportDocument::new(
        "table",
        argv,
        json!({ "preset": preset, "p": args.p, "n": args.n, "max_d": args.max_d,
                "max_candidates": budget.max_candidates, "max_seconds": budget.max_seconds }),
    );
    let text = match args.preset {
        TablePreset::Published | TablePreset::Custom => {
            let cells = match args.preset {
                TablePreset::Published => published_cells(&mut counter)?,
                _ => custom_cells(&mut counter, args.max_d.unwrap_or(0))?,
            };
            for c in cells.iter().filter(|c| c.status == CellStatus::Mismatch) {
                report.push_mismatch(Mismatch {
                    suite: "table".into(),
                    check: format!("nu({},{})", c.divisors[0], c.divisors[1]),
                    expected: c.pinned.or(c.published).map(|v| v.to_string()).unwrap_or_default(),
                    actual: c.computed.clone().unwrap_or_default(),
                });
            }
            let text = render_cells(&cells);
            report.results = json!({ "cells": cells });
            text
        }
        TablePreset::PerType => {
            let (p, n) = (args.p.unwrap_or(0), args.n.unwrap_or(0));
            let rows = type_rows(p, n, &counter)?;
            let mut text = format!("{:<8} {:>14} {:>14}  match\n", "type", "formula", "census");
            for r in &rows {
                let _ = writeln!(text, "{:<8} {:>14} {:>14}  {}", r.label.to_string(), r.formula, r.census, r.matches);
                if !r.matches {
                    report.push_mismatch(Mismatch {
                        suite: "table".into(),
                        check: format!("type {} at p = {p}, n = {n}", r.label),
                        expected: r.formula.clone(),
                        actual: r.census.to_string(),
                    });
                }
            }
            report.results = json!({ "p": p, "n": n, "rows": rows });
            text
        }
    };
    counter.finish(&mut report.runtime)?;
    report.runtime.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(&report, &text, &args.output)?;
    Ok(report)
}
