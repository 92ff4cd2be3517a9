use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A divisor chain `d1 | d2 | ... | dg` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PolarizationType {
    divisors: Vec<u64>,
}

impl PolarizationType {
    pub fn new(divisors: Vec<u64>) -> Result<Self> {
        if divisors.is_empty() {
            return Err(Error::EmptyType);
        }
        if let Some(index) = divisors.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDivisor { index: index + 1 });
        }
        for (i, w) in divisors.windows(2).enumerate() {
            if w[1] % w[0] != 0 {
                return Err(Error::NotDivisorChain { index: i + 1, lhs: w[0], rhs: w[1] });
            }
        }
        divisors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::Overflow("degree of polarization type"))?;
        Ok(Self { divisors })
    }

    pub fn g(&self) -> usize {
        self.divisors.len()
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// `d1 * ... * dg`.
    pub fn degree(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn last(&self) -> u64 {
        *self.divisors.last().expect("nonempty")
    }

    /// Drops leading 1's (keeps at least one entry).
    pub fn strip_ones(&self) -> Self {
        let start = self
            .divisors
            .iter()
            .position(|&d| d != 1)
            .unwrap_or(self.divisors.len() - 1);
        Self { divisors: self.divisors[start..].to_vec() }
    }

    /// Pads with leading 1's to dimension `g`.
    pub fn pad_to(&self, g: usize) -> Self {
        let mut divisors = vec![1; g.saturating_sub(self.g())];
        divisors.extend_from_slice(&self.divisors);
        Self { divisors }
    }
}

impl TryFrom<Vec<u64>> for PolarizationType {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PolarizationType> for Vec<u64> {
    fn from(t: PolarizationType) -> Self {
        t.divisors
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseTypeError {
    #[error("invalid integer {0:?} in divisor list")]
    BadInteger(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl FromStr for PolarizationType {
    type Err = ParseTypeError;

    /// Parses a comma-separated chain such as `1,2,4` (parentheses optional).
    fn from_str(s: &str) -> Result<Self, ParseTypeError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let divisors = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>().map_err(|_| ParseTypeError::BadInteger(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(divisors)?)
    }
}
