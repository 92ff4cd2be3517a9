//! Cross-check suites: closed forms against enumeration, internal identities
//! among the formulas, and the published table with its pinned conflicts.

use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::json;

use isotropic_core::arith::{is_prime, sigma};
use isotropic_core::closed_forms::{
    nu_elementary, nu_pp_by_type, nu_pp_even_exponent, nu_pp_odd_exponent, nu_pp_total,
};
use isotropic_core::curves::{
    dual_type, genus2_curves_in_linear_system, genus3_translation_classes, n_min,
};
use isotropic_core::enumeration::{census_by_type, count_direct, count_maximal_isotropic};
use isotropic_core::{
    CurveClassProblem, EnumerationBudget, PolarizationType, Rational, Strategy, SymplecticModule,
    TypeCensus, TypeKind,
};

use super::emit;
use super::table::{published_cells, CellStatus};
use crate::args::{Fault, Level, VerifyArgs};
use crate::counter::Counter;
use crate::failure::Failure;
use crate::report::{Mismatch, ReportDocument};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub checks: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinnedConflict {
    pub cell: String,
    pub published: u64,
    pub pinned: u64,
    pub reason: String,
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<Mismatch>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, check: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        self.checks += 1;
        let (expected, actual) = (expected.to_string(), actual.to_string());
        if expected != actual {
            self.failures.push(Mismatch { suite: self.name.into(), check: check.into(), expected, actual });
        }
    }
}

struct Plan {
    elementary: Vec<(u64, u32)>,
    prime_powers: Vec<(u64, u32)>,
    max_cyclic: u64,
    max_square_d3: u64,
    max_curve_d: u64,
}

impl Plan {
    fn for_level(level: Level) -> Self {
        match level {
            Level::Quick => Self {
                elementary: vec![(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (5, 2), (2, 3)],
                prime_powers: vec![(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)],
                max_cyclic: 50,
                max_square_d3: 24,
                max_curve_d: 12,
            },
            Level::Full => Self {
                elementary: vec![(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (2, 2), (3, 2), (5, 2), (2, 3), (3, 3)],
                prime_powers: prime_powers_up_to(1 << 20),
                max_cyclic: 120,
                max_square_d3: 60,
                max_curve_d: 16,
            },
        }
    }
}

/// Every `(p, n)` with `p^(4n) <= bound`.
fn prime_powers_up_to(bound: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2u64..).take_while(|&p| (p as u128).pow(4) <= bound).filter(|&p| is_prime(p)) {
        let mut n = 1;
        while (p as u128).pow(4 * n) <= bound {
            out.push((p, n));
            n += 1;
        }
    }
    out
}

fn module(d: &[u64]) -> Result<SymplecticModule, Failure> {
    Ok(SymplecticModule::from_divisors(d)?)
}

fn ptype(d: &[u64]) -> Result<PolarizationType, Failure> {
    Ok(PolarizationType::new(d.to_vec())?)
}

fn type_formula(p: u64, n: u32, kind: TypeKind, fault: Option<Fault>) -> Result<BigUint, Failure> {
    let v = nu_pp_by_type(p, n, kind)?;
    Ok(match (fault, kind) {
        (Some(Fault::Type3Formula), TypeKind::Three) => v + 1u32,
        _ => v,
    })
}

fn elementary(plan: &Plan, b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("elementary");
    for &(p, g) in &plan.elementary {
        let direct = count_direct(&module(&vec![p; g as usize])?, b)?;
        s.check(format!("K({p}^{g})"), nu_elementary(p, g)?, direct);
    }
    Ok(s)
}

fn cyclic(plan: &Plan, b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("cyclic_sigma");
    for d in 1..=plan.max_cyclic {
        s.check(format!("nu(1,{d})"), sigma(d), count_direct(&module(&[1, d])?, b)?);
    }
    Ok(s)
}

fn per_type(
    plan: &Plan,
    censuses: &[TypeCensus],
    fault: Option<Fault>,
) -> Result<Suite, Failure> {
    let mut s = Suite::new("per_type_formula");
    for (&(p, n), census) in plan.prime_powers.iter().zip(censuses) {
        for kind in TypeKind::admissible(n) {
            let check = format!("type {kind} count formula at p = {p}, n = {n}");
            s.check(check, type_formula(p, n, kind, fault)?, census.get(kind));
        }
        s.check(format!("total at p = {p}, n = {n}"), nu_pp_total(p, n)?, census.total);
    }
    Ok(s)
}

fn reduction(plan: &Plan, censuses: &[TypeCensus], b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("reduction_identities");
    for (&(p, n), census) in plan.prime_powers.iter().zip(censuses) {
        for kind in TypeKind::admissible(n) {
            let (m, target) = match kind {
                TypeKind::Four { k, l } => (n - 2 * l, TypeKind::Two { k: k - l }),
                TypeKind::Five { l } => (n - 2 * l, TypeKind::Three),
                TypeKind::Six { k } => (n - 2 * k, TypeKind::One),
                TypeKind::Seven => (0, TypeKind::One),
                _ => continue,
            };
            let reduced = if m == 0 { 1 } else { census_by_type(p, m, b)?.get(target) };
            s.check(format!("type {kind} at p = {p}, n = {n} vs {target} at n = {m}"), reduced, census.get(kind));
        }
    }
    Ok(s)
}

fn scheme(plan: &Plan, censuses: &[TypeCensus], b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("scheme_point_count");
    for (&(p, n), census) in plan.prime_powers.iter().zip(censuses) {
        let base = BigUint::from(count_direct(&module(&[p, p])?, b)?);
        let expected = BigUint::from(p).pow(3 * (n - 1)) * base;
        s.check(format!("type 1 at p = {p}, n = {n}"), expected, census.get(TypeKind::One));
    }
    Ok(s)
}

fn explicit_formulas() -> Result<Suite, Failure> {
    let mut s = Suite::new("explicit_exponent_formulas");
    for p in [2u64, 3, 5, 7] {
        for m in 2..=5 {
            s.check(format!("odd exponent p = {p}, m = {m}"), nu_pp_total(p, 2 * m + 1)?, nu_pp_odd_exponent(p, m)?);
        }
        for m in 3..=5 {
            s.check(format!("even exponent p = {p}, m = {m}"), nu_pp_total(p, 2 * m)?, nu_pp_even_exponent(p, m)?);
        }
    }
    Ok(s)
}

fn multiplicativity(b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("multiplicativity");
    for d in [[6u64, 6], [2, 6], [3, 6], [2, 12], [6, 12], [1, 30], [10, 10]] {
        let k = module(&d)?;
        s.check(format!("K({},{})", d[0], d[1]), count_maximal_isotropic(&k, b)?, count_direct(&k, b)?);
    }
    Ok(s)
}

fn biduality() -> Result<Suite, Failure> {
    let mut s = Suite::new("dual_type_biduality");
    let chains: &[&[u64]] = &[&[1, 6], &[2, 4], &[1, 1, 5], &[1, 2, 4], &[2, 6, 12], &[1, 2, 6, 12], &[1, 1, 3, 9]];
    for d in chains {
        let t = ptype(d)?;
        s.check(t.to_string(), &t, dual_type(&dual_type(&t)));
    }
    Ok(s)
}

fn consistency_square(plan: &Plan, b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("consistency_square");
    for d3 in 1..=plan.max_square_d3 {
        for d2 in (1..=d3).filter(|d2| d3 % d2 == 0) {
            let t = ptype(&[1, d2, d3])?;
            let problem = CurveClassProblem::new(t.clone(), Rational::new(1, 2 * d2)?)?;
            s.check(
                format!("type {t}"),
                n_min(&t, b)?.count.value,
                genus3_translation_classes(&problem, b)?.count.value,
            );
        }
    }
    Ok(s)
}

fn curve_census(plan: &Plan, b: &EnumerationBudget) -> Result<Suite, Failure> {
    let mut s = Suite::new("curve_census");
    for d in 1..=plan.max_curve_d.min(10) {
        s.check(format!("minimal class on ({d},{d},{d})"), 1, n_min(&ptype(&[d, d, d])?, b)?.count.value);
    }
    for d in 1..=plan.max_curve_d {
        s.check(format!("minimal class on (1,{d},{d})"), sigma(d), n_min(&ptype(&[1, d, d])?, b)?.count.value);
        let ls = genus2_curves_in_linear_system(&ptype(&[1, d])?, b)?.value;
        s.check(format!("linear system on (1,{d})"), sigma(d) * d * d, ls);
    }
    Ok(s)
}

fn published_table(b: &EnumerationBudget, conflicts: &mut Vec<PinnedConflict>) -> Result<Suite, Failure> {
    let mut s = Suite::new("published_table");
    let mut counter = Counter::new(*b, Strategy::Auto, None);
    for cell in published_cells(&mut counter)? {
        let name = format!("nu({},{})", cell.divisors[0], cell.divisors[1]);
        let expected = cell.pinned.or(cell.published).expect("published cell");
        s.check(name.clone(), expected, cell.computed.as_deref().unwrap_or("budget exceeded"));
        if cell.status == CellStatus::KnownConflict {
            conflicts.push(PinnedConflict {
                cell: name,
                published: cell.published.expect("published cell"),
                pinned: expected,
                reason: format!("published table conflict, oracle value pinned: {}", cell.note.unwrap_or_default()),
            });
        }
    }
    Ok(s)
}

pub fn run(args: &VerifyArgs, argv: &[String]) -> Result<ReportDocument, Failure> {
    let start = Instant::now();
    let b = args.budget.budget()?;
    let plan = Plan::for_level(args.level);
    let level = format!("{:?}", args.level).to_lowercase();
    let mut report = ReportDocument::new(
        "verify",
        argv,
        json!({ "level": level, "inject_fault": args.inject_fault.map(|_| "type3-formula"),
                "max_candidates": b.max_candidates, "max_seconds": b.max_seconds }),
    );

    let censuses = plan
        .prime_powers
        .iter()
        .map(|&(p, n)| census_by_type(p, n, &b))
        .collect::<Result<Vec<_>, _>>()?;
    let mut conflicts = Vec::new();
    let suites = vec![
        elementary(&plan, &b)?,
        cyclic(&plan, &b)?,
        per_type(&plan, &censuses, args.inject_fault)?,
        reduction(&plan, &censuses, &b)?,
        scheme(&plan, &censuses, &b)?,
        explicit_formulas()?,
        multiplicativity(&b)?,
        biduality()?,
        consistency_square(&plan, &b)?,
        curve_census(&plan, &b)?,
        published_table(&b, &mut conflicts)?,
    ];

    let mut text = String::new();
    let mut summaries = Vec::new();
    for suite in suites {
        text.push_str(&format!(
            "{:<28} {:>4} checks  {}\n",
            suite.name,
            suite.checks,
            if suite.failures.is_empty() { "ok".to_string() } else { format!("{} FAILED", suite.failures.len()) }
        ));
        summaries.push(SuiteSummary { suite: suite.name.into(), checks: suite.checks, failed: suite.failures.len() });
        for m in suite.failures {
            text.push_str(&format!("  mismatch: {} (expected {}, got {})\n", m.check, m.expected, m.actual));
            report.push_mismatch(m);
        }
    }
    for c in &conflicts {
        text.push_str(&format!("pinned {}: published {}, oracle {}\n", c.cell, c.published, c.pinned));
    }
    report.results = json!({ "suites": summaries, "pinned_conflicts": conflicts });
    report.runtime.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(&report, &text, &args.output)?;
    Ok(report)
}
