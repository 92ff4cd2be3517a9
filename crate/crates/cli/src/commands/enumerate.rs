//! One record per maximal isotropic subgroup, in canonical order.
//!
//! JSONL fields: `index`, `basis` (canonical rows of the preimage lattice in
//! `Z^(2g)`), `order`, `invariants` (ascending, trivial factors dropped) and
//! `type` (the type label when the ambient module is `K(p^n, p^n)`, else
//! null). CSV has the same columns; `basis` rows are `;`-separated with
//! space-separated entries and `invariants` are space-separated.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use isotropic_core::arith::{factorize, valuation};
use isotropic_core::enumeration::enumerate_maximal_isotropic;
use isotropic_core::{Subgroup, SymplecticModule, TypeKind};

use super::parse_type;
use crate::args::{Emit, EnumerateArgs};
use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    pub basis: Vec<Vec<i64>>,
    pub order: u64,
    pub invariants: Vec<u64>,
    #[serde(rename = "type")]
    pub kind: Option<TypeKind>,
}

#[derive(Serialize)]
struct CsvRecord {
    index: usize,
    order: u64,
    invariants: String,
    #[serde(rename = "type")]
    kind: String,
    basis: String,
}

/// `(p, n)` when the module is `K(p^n, p^n)` up to leading trivial factors.
fn square_prime_power(module: &SymplecticModule) -> Option<(u64, u32)> {
    let d = module.ptype().strip_ones();
    match d.divisors() {
        [a, b] if a == b => match factorize(*a).as_slice() {
            [(p, n)] => Some((*p, *n)),
            _ => None,
        },
        _ => None,
    }
}

fn record(index: usize, h: &Subgroup, square: Option<(u64, u32)>) -> Result<Record, Failure> {
    let invariants = h.abelian_invariants();
    let kind = square
        .map(|(p, n)| {
            let exps: Vec<u32> = invariants.iter().map(|&f| valuation(f, p)).collect();
            TypeKind::classify(&exps, n)
        })
        .transpose()?;
    Ok(Record {
        index,
        basis: h.basis().to_vec(),
        order: u64::try_from(h.order()).map_err(|_| Failure::IllPosed("subgroup order overflows u64".into()))?,
        invariants,
        kind,
    })
}

pub fn records(module: &Arc<SymplecticModule>, args: &EnumerateArgs) -> Result<Vec<Record>, Failure> {
    let square = square_prime_power(module);
    enumerate_maximal_isotropic(module, &args.budget.budget()?)?
        .iter()
        .enumerate()
        .map(|(i, h)| record(i, h, square))
        .collect()
}

fn write_records(out: impl Write, records: &[Record], emit: Emit) -> io::Result<()> {
    match emit {
        Emit::Jsonl => {
            let mut out = io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                w.serialize(CsvRecord {
                    index: r.index,
                    order: r.order,
                    invariants: r.invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    kind: r.kind.map(|k| k.to_string()).unwrap_or_default(),
                    basis: r.basis.iter().map(|row| join(row)).collect::<Vec<_>>().join(";"),
                })?;
            }
            w.flush()
        }
    }
}

/// Writes to a sibling temporary file and renames on success, so a budget
/// failure never leaves a partial output behind.
fn write_atomically(path: &Path, records: &[Record], emit: Emit) -> Result<(), Failure> {
    let tmp = path.with_extension("partial");
    let result = fs::File::create(&tmp)
        .and_then(|f| write_records(f, records, emit))
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

pub fn run(args: &EnumerateArgs) -> Result<usize, Failure> {
    let ptype = parse_type(&args.ptype)?;
    let module = Arc::new(SymplecticModule::new(ptype)?);
    let records = records(&module, args)?;
    match &args.out {
        Some(path) => write_atomically(path, &records, args.emit)?,
        None => write_records(io::stdout().lock(), &records, args.emit)?,
    }
    Ok(records.len())
}
