use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::json;

use isotropic_core::count::{decimal, ComponentCount};
use isotropic_core::curves::{genus2_curves_in_linear_system, translation_classes};
use isotropic_core::{
    CountMethod, CountValue, CurveClassProblem, CurveClassReport, Interpretation, PolarizationType,
    Rational, Strategy,
};

use super::{emit, parse_type};
use crate::args::CountArgs;
use crate::counter::Counter;
use crate::failure::Failure;
use crate::report::ReportDocument;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Maximal isotropic subgroups of K(d).
    MaximalIsotropic,
    /// Translation classes of curves in a class `r * c1(L)^(g-1)`.
    TranslationClasses,
    /// Genus-2 curves in the linear system |L|.
    LinearSystemCurves,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub quantity: Quantity,
    pub ptype: PolarizationType,
    pub r: Option<Rational>,
    /// The module whose maximal isotropic subgroups are counted.
    pub counted_module: PolarizationType,
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub method: CountMethod,
    pub interpretation: Interpretation,
    pub assumes_simple: bool,
    pub components: Vec<ComponentCount>,
}

pub fn run(args: &CountArgs, argv: &[String]) -> Result<ReportDocument, Failure> {
    let start = Instant::now();
    let ptype = parse_type(&args.ptype)?;
    let budget = args.budget.budget()?;
    let strategy = Strategy::from(args.method);
    let curve_mode = args.minimal || args.r.is_some() || args.linear_system;
    if curve_mode && strategy != Strategy::Auto {
        return Err(Failure::Usage("--method applies only to plain ν counts".into()));
    }
    let r = args.r.as_deref().map(str::parse::<Rational>).transpose()?;
    let mut report = ReportDocument::new(
        "count",
        argv,
        json!({
            "type": ptype,
            "r": r,
            "minimal": args.minimal,
            "linear_system": args.linear_system,
            "method": strategy,
            "max_candidates": budget.max_candidates,
            "max_seconds": budget.max_seconds,
        }),
    );

    let mut counter = Counter::new(budget, strategy, args.cache.open()?);
    let result = if args.minimal || r.is_some() {
        let problem = match r {
            Some(r) => CurveClassProblem::new(ptype.clone(), r)?,
            None => {
                let d1 = ptype.divisors()[0];
                let reduced = PolarizationType::new(ptype.divisors().iter().map(|&d| d / d1).collect())?;
                CurveClassProblem::minimal(reduced)?
            }
        };
        let rep: CurveClassReport = translation_classes(&problem, &budget)?;
        for w in &rep.warnings {
            report.push_warning(w.clone());
        }
        from_curve_report(Quantity::TranslationClasses, &ptype, Some(problem.r), rep.theorem_group_type, rep.count, rep.interpretation)
    } else if args.linear_system {
        let count = genus2_curves_in_linear_system(&ptype, &budget)?;
        for w in &count.warnings {
            report.push_warning(w.clone());
        }
        from_curve_report(Quantity::LinearSystemCurves, &ptype, None, ptype.clone(), count, Interpretation::Exact)
    } else {
        let count = counter.nu(&ptype)?;
        for w in &count.warnings {
            report.push_warning(w.clone());
        }
        CountResult {
            quantity: Quantity::MaximalIsotropic,
            ptype: ptype.clone(),
            r: None,
            counted_module: ptype.clone(),
            value: count.value,
            method: count.method,
            interpretation: Interpretation::Exact,
            assumes_simple: false,
            components: count.components,
        }
    };
    let text = format!(
        "{} = {}  [{}{}]\n",
        describe(&result),
        result.value,
        result.method,
        if result.interpretation == Interpretation::UpperBound { ", upper bound" } else { "" }
    );
    report.results = serde_json::to_value(&result).expect("serializable");
    counter.finish(&mut report.runtime)?;
    report.runtime.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(&report, &text, &args.output)?;
    Ok(report)
}

fn from_curve_report(
    quantity: Quantity,
    ptype: &PolarizationType,
    r: Option<Rational>,
    counted_module: PolarizationType,
    count: CountValue,
    interpretation: Interpretation,
) -> CountResult {
    CountResult {
        quantity,
        ptype: ptype.clone(),
        r,
        counted_module,
        value: count.value,
        method: count.method,
        interpretation,
        assumes_simple: true,
        components: count.components,
    }
}

fn describe(r: &CountResult) -> String {
    match r.quantity {
        Quantity::MaximalIsotropic => format!("nu{}", r.ptype),
        Quantity::TranslationClasses => format!(
            "translation classes, type {}, r = {} (counted in K{})",
            r.ptype,
            r.r.map(|x| x.to_string()).unwrap_or_default(),
            r.counted_module
        ),
        Quantity::LinearSystemCurves => format!("genus-2 curves in |L|, type {}", r.ptype),
    }
}
