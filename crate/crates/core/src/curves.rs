//! Curve counts on polarized abelian varieties.
//!
//! Translation classes of genus-g curves in the class `r * ∧^(g-1) c1(L)` on
//! an abelian variety of dimension g correspond to maximal isotropic
//! subgroups (of Jacobian type) in `K` of a power of the dual polarization.
//! That group has type `r (g-1)! (deg L / d_g, ..., deg L / d_1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::count::{nu, CountValue, CountWarning};
use crate::enumeration::EnumerationBudget;
use crate::error::{Error, Result};
use crate::ptype::PolarizationType;

/// A positive rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::IllPosed(format!("r = {num}/{den} must be a positive rational")));
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// `self * k` if it is an integer.
    pub fn times_integer(&self, k: u128) -> Option<u128> {
        let prod = (self.num as u128).checked_mul(k)?;
        (prod % self.den as u128 == 0).then(|| prod / self.den as u128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::IllPosed(format!("cannot parse rational {s:?}"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        Self::new(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The class `r * ∧^(g-1) c1(L)` on an abelian variety of the given type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClassProblem {
    pub ptype: PolarizationType,
    pub r: Rational,
}

impl CurveClassProblem {
    /// Checks that `r (g-1)! d1 ... d_(g-1)` is a positive integer, i.e. that
    /// the class is integral.
    pub fn new(ptype: PolarizationType, r: Rational) -> Result<Self> {
        let g = ptype.g();
        if g < 2 {
            return Err(Error::IllPosed(format!("dimension g = {g} must be at least 2")));
        }
        let problem = Self { ptype, r };
        if problem.class_multiplier().is_none() {
            return Err(Error::IllPosed(format!(
                "r (g-1)! d1...d(g-1) = {} * {} is not an integer",
                r,
                problem.minimal_denominator()
            )));
        }
        Ok(problem)
    }

    /// The minimal class: `r = 1 / ((g-1)! d1 ... d_(g-1))`.
    pub fn minimal(ptype: PolarizationType) -> Result<Self> {
        if ptype.g() < 2 {
            return Err(Error::IllPosed(format!("dimension g = {} must be at least 2", ptype.g())));
        }
        let den = factorial(ptype.g() - 1)
            * ptype.divisors()[..ptype.g() - 1].iter().map(|&d| d as u128).product::<u128>();
        let den = u64::try_from(den).map_err(|_| Error::Overflow("minimal class denominator"))?;
        Self::new(ptype, Rational::new(1, den)?)
    }

    pub fn g(&self) -> usize {
        self.ptype.g()
    }

    /// `(g-1)! d1 ... d_(g-1)`.
    fn minimal_denominator(&self) -> u128 {
        let g = self.g();
        factorial(g - 1) * self.ptype.divisors()[..g - 1].iter().map(|&d| d as u128).product::<u128>()
    }

    /// `r (g-1)! d1 ... d_(g-1)`, if integral.
    pub fn class_multiplier(&self) -> Option<u128> {
        self.r.times_integer(self.minimal_denominator())
    }

    /// `beta = r (g-1)! deg L`.
    pub fn beta(&self) -> u128 {
        self.class_multiplier().expect("well-posed") * self.ptype.last() as u128
    }

    /// Degree of the isogeny from the Jacobian: `r^g ((g-1)!)^g (deg L)^(g-1)`.
    pub fn isogeny_degree(&self) -> BigUint {
        let beta = BigUint::from(self.beta());
        let deg = BigUint::from(self.ptype.degree());
        let num = beta.pow(self.g() as u32);
        debug_assert!((&num % &deg) == BigUint::from(0u32));
        num / deg
    }

    /// The power `r (g-1)! d2 ... d_(g-1)` of the dual polarization.
    pub fn dual_exponent(&self) -> Result<Rational> {
        let g = self.g();
        let inner: u128 = factorial(g - 1)
            * self.ptype.divisors()[1..g - 1].iter().map(|&d| d as u128).product::<u128>();
        let num = (self.r.num as u128)
            .checked_mul(inner)
            .and_then(|x| u64::try_from(x).ok())
            .ok_or(Error::Overflow("dual exponent"))?;
        Rational::new(num, self.r.den)
    }
}

impl fmt::Display for CurveClassProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {}, r = {}", self.ptype, self.r)
    }
}

/// Type of the dual polarization: `(d1, d1 dg / d_(g-1), ..., d1 dg / d2, dg)`.
pub fn dual_type(ptype: &PolarizationType) -> PolarizationType {
    let d = ptype.divisors();
    let g = d.len();
    let (first, last) = (d[0] as u128, d[g - 1] as u128);
    let divisors = (0..g)
        .map(|i| u64::try_from(first * last / d[g - 1 - i] as u128).expect("fits"))
        .collect();
    PolarizationType::new(divisors).expect("dual of a chain is a chain")
}

/// Type of `L^k`.
pub fn power_type(ptype: &PolarizationType, k: u64) -> Result<PolarizationType> {
    if k == 0 {
        return Err(Error::OutOfRange("power must be positive".into()));
    }
    let divisors = ptype
        .divisors()
        .iter()
        .map(|&d| d.checked_mul(k).ok_or(Error::Overflow("power type")))
        .collect::<Result<Vec<_>>>()?;
    PolarizationType::new(divisors)
}

/// Type of the module whose maximal isotropic subgroups count the curves:
/// `r (g-1)! (deg L / d_g, deg L / d_(g-1), ..., deg L / d_1)`.
pub fn theorem_group(problem: &CurveClassProblem) -> Result<PolarizationType> {
    let g = problem.g();
    let d = problem.ptype.divisors();
    let deg = problem.ptype.degree() as u128;
    let scale = problem.r.times_integer(factorial(g - 1) * deg / d[g - 1] as u128);
    let Some(first) = scale else {
        return Err(Error::IllPosed(format!("{problem}: non-integral class")));
    };
    let mut divisors = Vec::with_capacity(g);
    for i in (0..g).rev() {
        let e = problem
            .r
            .times_integer(factorial(g - 1) * deg / d[i] as u128)
            .ok_or_else(|| Error::IllPosed(format!("{problem}: non-integral group type")))?;
        divisors.push(u64::try_from(e).map_err(|_| Error::Overflow("theorem group type"))?);
    }
    debug_assert_eq!(divisors[0] as u128, first);
    if g == 3 {
        // (2 r d1 d2, 2 r d1 d3, 2 r d2 d3)
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (slot, (a, b)) in pairs.into_iter().enumerate() {
            let v = problem.r.times_integer(2 * d[a] as u128 * d[b] as u128);
            assert_eq!(v, Some(divisors[slot] as u128), "genus-3 triple disagrees");
        }
    }
    PolarizationType::new(divisors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    /// Exact count, valid for simple abelian varieties of dimension 2 or 3.
    Exact,
    /// Jacobian type is not decided in dimension >= 4; the count bounds the answer.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClassReport {
    pub problem: CurveClassProblem,
    pub theorem_group_type: PolarizationType,
    pub count: CountValue,
    pub interpretation: Interpretation,
    pub assumes_simple: bool,
    pub warnings: Vec<CountWarning>,
}

fn simplicity_note() -> CountWarning {
    CountWarning {
        code: "assumes_simple".into(),
        message: "count assumes the abelian variety is simple; simplicity is not checked".into(),
    }
}

/// Translation classes of genus-g curves in the class of `problem`.
pub fn translation_classes(
    problem: &CurveClassProblem,
    budget: &EnumerationBudget,
) -> Result<CurveClassReport> {
    let group = theorem_group(problem)?;
    let count = nu(&group, budget)?;
    let mut warnings = vec![simplicity_note()];
    let interpretation = if problem.g() <= 3 {
        Interpretation::Exact
    } else {
        warnings.push(CountWarning {
            code: "jacobian_type_undecided".into(),
            message: format!(
                "g = {}: only maximal isotropic subgroups of Jacobian type count, which is not \
                 decided here; the value is an upper bound (and 0 for a generic abelian variety)",
                problem.g()
            ),
        });
        Interpretation::UpperBound
    };
    warnings.extend(count.warnings.iter().cloned());
    Ok(CurveClassReport {
        problem: problem.clone(),
        theorem_group_type: group,
        count,
        interpretation,
        assumes_simple: true,
        warnings,
    })
}

/// Genus-3 translation classes on an abelian threefold.
pub fn genus3_translation_classes(
    problem: &CurveClassProblem,
    budget: &EnumerationBudget,
) -> Result<CurveClassReport> {
    if problem.g() != 3 {
        return Err(Error::IllPosed(format!("expected g = 3, got g = {}", problem.g())));
    }
    translation_classes(problem, budget)
}

/// Number of genus-2 curves in the linear system `|L|` on an abelian surface:
/// `d1^2 d2^2 * nu(d1, d2)`.
pub fn genus2_curves_in_linear_system(
    ptype: &PolarizationType,
    budget: &EnumerationBudget,
) -> Result<CountValue> {
    if ptype.g() != 2 {
        return Err(Error::IllPosed(format!("expected g = 2, got g = {}", ptype.g())));
    }
    let mut count = nu(ptype, budget)?;
    let deg = BigUint::from(ptype.degree());
    count.value *= &deg * &deg;
    count.warnings.insert(0, simplicity_note());
    Ok(count)
}

/// Translation classes of genus-g curves in the minimal class; the type is
/// first normalized to `(1, d2/d1, ..., dg/d1)`.
pub fn n_min(ptype: &PolarizationType, budget: &EnumerationBudget) -> Result<CurveClassReport> {
    let d1 = ptype.divisors()[0];
    let reduced = PolarizationType::new(ptype.divisors().iter().map(|&d| d / d1).collect())?;
    translation_classes(&CurveClassProblem::minimal(reduced)?, budget)
}
