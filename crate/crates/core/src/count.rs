//! The hybrid counter: closed forms where they exist, enumeration elsewhere,
//! combined multiplicatively over primary components.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{sigma_prime_power, valuation};
use crate::closed_forms::{nu_elementary, nu_pp_total};
use crate::enumeration::{count_direct, EnumerationBudget};
use crate::error::{Error, Result};
use crate::module::SymplecticModule;
use crate::ptype::PolarizationType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    ClosedForm,
    Enumeration,
    ProductOfComponents,
    TablePin,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CountMethod::ClosedForm => "closed_form",
            CountMethod::Enumeration => "enumeration",
            CountMethod::ProductOfComponents => "product_of_components",
            CountMethod::TablePin => "table_pin",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Auto,
    Closed,
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountWarning {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCount {
    pub prime: u64,
    pub exponents: Vec<u32>,
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub method: CountMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountValue {
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub method: CountMethod,
    pub components: Vec<ComponentCount>,
    pub warnings: Vec<CountWarning>,
}

impl CountValue {
    pub fn closed(value: BigUint) -> Self {
        Self { value, method: CountMethod::ClosedForm, components: Vec::new(), warnings: Vec::new() }
    }
}

/// Serializes big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Square prime-power modules whose published tabulated count disagrees with
/// the per-type formula sum: `(p, n, published value)`.
pub const PUBLISHED_CONFLICTS: &[(u64, u32, u64)] = &[(2, 4, 10191)];

fn published_conflict(p: u64, a: u32) -> Option<u64> {
    PUBLISHED_CONFLICTS.iter().find(|&&(q, n, _)| q == p && n == a).map(|&(_, _, v)| v)
}

fn conflict_warning(p: u64, a: u32, published: u64, formula: &BigUint, used: &BigUint) -> CountWarning {
    let q = p.pow(a);
    CountWarning {
        code: "published_table_conflict".into(),
        message: format!(
            "nu({q},{q}): published table lists {published}, per-type formula sum gives {formula}; \
             reporting {used}"
        ),
    }
}

/// Closed form for a primary component with exponents `a` (leading zeros allowed).
fn closed_form(p: u64, exps: &[u32]) -> Result<Option<BigUint>> {
    let start = exps.iter().position(|&a| a != 0).unwrap_or(exps.len());
    let a = &exps[start..];
    Ok(match a {
        [] => Some(BigUint::one()),
        [x] => Some(sigma_prime_power(p, *x)),
        _ if a.iter().all(|&x| x == 1) => Some(nu_elementary(p, a.len() as u32)?),
        [x, y] if x == y => Some(nu_pp_total(p, *x)?),
        _ => None,
    })
}

/// Number of maximal isotropic subgroups of `K(ptype)`.
pub fn nu(ptype: &PolarizationType, budget: &EnumerationBudget) -> Result<CountValue> {
    nu_with(ptype, Strategy::Auto, budget)
}

pub fn nu_with(
    ptype: &PolarizationType,
    strategy: Strategy,
    budget: &EnumerationBudget,
) -> Result<CountValue> {
    let module = SymplecticModule::new(ptype.clone())?;
    let mut components = Vec::new();
    let mut warnings = Vec::new();
    let mut total = BigUint::one();

    for comp in module.primary_decompose() {
        let p = comp.prime;
        let exps: Vec<u32> = ptype.divisors().iter().map(|&d| valuation(d, p)).collect();
        let top = *exps.last().expect("nonempty");
        let square = exps.len() >= 2 && exps[..exps.len() - 2].iter().all(|&a| a == 0)
            && exps[exps.len() - 2] == top;
        let conflict = if square { published_conflict(p, top) } else { None };

        let closed = match strategy {
            Strategy::Enumerate => None,
            _ => closed_form(p, &exps)?,
        };
        let (value, method) = match (strategy, closed) {
            (Strategy::Auto, Some(v)) if conflict.is_none() => (v, CountMethod::ClosedForm),
            (Strategy::Closed, Some(v)) => (v, CountMethod::ClosedForm),
            (Strategy::Closed, None) => {
                return Err(Error::NoClosedForm(format!(
                    "component {} of {ptype}",
                    comp.module.ptype()
                )))
            }
            _ => (BigUint::from(count_direct(&comp.module, budget)?), CountMethod::Enumeration),
        };
        if let Some(published) = conflict {
            let formula = nu_pp_total(p, top)?;
            warnings.push(conflict_warning(p, top, published, &formula, &value));
        }
        total *= &value;
        components.push(ComponentCount { prime: p, exponents: exps, value, method });
    }

    let method = match components.as_slice() {
        [] => CountMethod::ClosedForm,
        [only] => only.method,
        _ => CountMethod::ProductOfComponents,
    };
    Ok(CountValue { value: total, method, components, warnings })
}
