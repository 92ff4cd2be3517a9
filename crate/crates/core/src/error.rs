use thiserror::Error;

use crate::enumeration::EnumerationStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty divisor sequence")]
    EmptyType,

    #[error("divisor d{index} must be positive")]
    ZeroDivisor { index: usize },

    #[error("not a divisor chain: d{index} = {lhs} does not divide d{next} = {rhs}", next = index + 1)]
    NotDivisorChain { index: usize, lhs: u64, rhs: u64 },

    #[error("vector has {got} coordinates, module rank is {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("coordinate {index} = {value} is not reduced modulo {modulus}")]
    CoordinateOutOfRange { index: usize, value: u64, modulus: u64 },

    #[error("subgroups live in different modules")]
    ModuleMismatch,

    #[error("subgroup is not isotropic")]
    NotIsotropic,

    #[error("subgroup is not contained in the required range: {0}")]
    NotInRange(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("inadmissible type label {label} for n = {n}")]
    InadmissibleLabel { label: String, n: u32 },

    #[error("unclassifiable maximal isotropic subgroup with invariants {invariants:?} in K(p^{n}, p^{n})")]
    Unclassifiable { invariants: Vec<u64>, n: u32 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("inexact division {numerator} / {denominator}")]
    InexactDivision { numerator: String, denominator: String },

    #[error("ill-posed curve class: {0}")]
    IllPosed(String),

    #[error("no closed form available for {0}")]
    NoClosedForm(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("enumeration budget exceeded after {} candidates, {} subgroups found, {} ms", .0.candidates, .0.found, .0.elapsed_ms)]
    BudgetExceeded(EnumerationStats),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
