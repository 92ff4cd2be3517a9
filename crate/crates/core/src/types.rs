//! Isomorphism types of maximal isotropic subgroups of `K(p^n, p^n)`.
//!
//! A maximal isotropic subgroup of `K(p^n, p^n)` has invariants
//! `Z/p^(n-l) x Z/p^(n-k) x Z/p^k x Z/p^l` with `0 <= l <= k <= n/2`; the
//! seven kinds below partition that range.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TypeKind {
    /// `l = k = 0`.
    One,
    /// `l = 0 < k < n - k`.
    Two { k: u32 },
    /// `l = 0`, `2k = n`.
    Three,
    /// `0 < l < k < n - k`.
    Four { k: u32, l: u32 },
    /// `0 < l < k`, `2k = n`.
    Five { l: u32 },
    /// `0 < l = k < n - k`.
    Six { k: u32 },
    /// `l = k`, `2k = n`.
    Seven,
}

impl TypeKind {
    pub fn is_admissible(&self, n: u32) -> bool {
        match *self {
            TypeKind::One => n >= 1,
            TypeKind::Two { k } | TypeKind::Six { k } => 0 < k && 2 * k < n,
            TypeKind::Three | TypeKind::Seven => n >= 2 && n.is_multiple_of(2),
            TypeKind::Four { k, l } => 0 < l && l < k && 2 * k < n,
            TypeKind::Five { l } => n.is_multiple_of(2) && 0 < l && l < n / 2,
        }
    }

    /// Every admissible kind for `K(p^n, p^n)`, in table order.
    pub fn admissible(n: u32) -> Vec<TypeKind> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![TypeKind::One];
        out.extend((1..n).filter(|&k| 2 * k < n).map(|k| TypeKind::Two { k }));
        if n.is_multiple_of(2) {
            out.push(TypeKind::Three);
        }
        for k in (1..n).filter(|&k| 2 * k < n) {
            out.extend((1..k).map(|l| TypeKind::Four { k, l }));
        }
        if n.is_multiple_of(2) {
            out.extend((1..n / 2).map(|l| TypeKind::Five { l }));
        }
        out.extend((1..n).filter(|&k| 2 * k < n).map(|k| TypeKind::Six { k }));
        if n.is_multiple_of(2) {
            out.push(TypeKind::Seven);
        }
        debug_assert!(out.iter().all(|t| t.is_admissible(n)));
        out
    }

    /// The `(l, k)` parameters of the invariants `(n-l, n-k, k, l)`.
    pub fn parameters(&self, n: u32) -> (u32, u32) {
        match *self {
            TypeKind::One => (0, 0),
            TypeKind::Two { k } => (0, k),
            TypeKind::Three => (0, n / 2),
            TypeKind::Four { k, l } => (l, k),
            TypeKind::Five { l } => (l, n / 2),
            TypeKind::Six { k } => (k, k),
            TypeKind::Seven => (n / 2, n / 2),
        }
    }

    /// Invariant exponents, descending, zeros dropped.
    pub fn invariant_exponents(&self, n: u32) -> Vec<u32> {
        let (l, k) = self.parameters(n);
        [n - l, n - k, k, l].into_iter().filter(|&e| e > 0).collect()
    }

    /// Classifies a maximal isotropic subgroup of `K(p^n, p^n)` from its
    /// invariant exponents (any order, zeros allowed).
    pub fn classify(exponents: &[u32], n: u32) -> Result<TypeKind> {
        let unclassifiable = || Error::Unclassifiable {
            invariants: exponents.iter().map(|&e| e as u64).collect(),
            n,
        };
        let mut e: Vec<u32> = exponents.iter().copied().filter(|&x| x > 0).collect();
        if e.len() > 4 {
            return Err(unclassifiable());
        }
        e.resize(4, 0);
        e.sort_unstable_by(|a, b| b.cmp(a));
        let (l, k) = (e[3], e[2]);
        if e[0] + l != n || e[1] + k != n || 2 * k > n {
            return Err(unclassifiable());
        }
        let even_half = 2 * k == n;
        let kind = match (l, k) {
            (l, k) if l == k && even_half => TypeKind::Seven,
            (0, _) if even_half => TypeKind::Three,
            (l, _) if even_half => TypeKind::Five { l },
            (l, k) if l == k && l > 0 => TypeKind::Six { k },
            (0, 0) => TypeKind::One,
            (0, k) => TypeKind::Two { k },
            (l, k) => TypeKind::Four { k, l },
        };
        debug_assert!(kind.is_admissible(n));
        Ok(kind)
    }

    /// Example generators `[(basis index, multiplier)]` of a subgroup of this kind.
    pub fn example_generators(&self, p: u64, n: u32) -> Vec<(usize, u64)> {
        let (l, k) = self.parameters(n);
        vec![(0, p.pow(l)), (1, p.pow(k)), (3, p.pow(n - k)), (2, p.pow(n - l))]
    }
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeKind::One => write!(f, "1"),
            TypeKind::Two { k } => write!(f, "2_{k}"),
            TypeKind::Three => write!(f, "3"),
            TypeKind::Four { k, l } => write!(f, "4_{k},{l}"),
            TypeKind::Five { l } => write!(f, "5_{l}"),
            TypeKind::Six { k } => write!(f, "6_{k}"),
            TypeKind::Seven => write!(f, "7"),
        }
    }
}

impl FromStr for TypeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("invalid type label {s:?}");
        let (head, params) = match s.split_once('_') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let nums: Vec<u32> = match params {
            Some(p) => p.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        match (head, nums.as_slice()) {
            ("1", []) => Ok(TypeKind::One),
            ("2", [k]) => Ok(TypeKind::Two { k: *k }),
            ("3", []) => Ok(TypeKind::Three),
            ("4", [k, l]) => Ok(TypeKind::Four { k: *k, l: *l }),
            ("5", [l]) => Ok(TypeKind::Five { l: *l }),
            ("6", [k]) => Ok(TypeKind::Six { k: *k }),
            ("7", []) => Ok(TypeKind::Seven),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for TypeKind {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<TypeKind> for String {
    fn from(t: TypeKind) -> String {
        t.to_string()
    }
}

/// A type kind together with its ambient `K(p^n, p^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub p: u64,
    pub n: u32,
    pub kind: TypeKind,
}

impl TypeLabel {
    pub fn new(p: u64, n: u32, kind: TypeKind) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !kind.is_admissible(n) {
            return Err(Error::InadmissibleLabel { label: kind.to_string(), n });
        }
        Ok(Self { p, n, kind })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in K({}^{}, {}^{})", self.kind, self.p, self.n, self.p, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_lists() {
        assert_eq!(TypeKind::admissible(1), vec![TypeKind::One]);
        assert_eq!(
            TypeKind::admissible(2),
            vec![TypeKind::One, TypeKind::Three, TypeKind::Seven]
        );
        assert_eq!(
            TypeKind::admissible(3),
            vec![TypeKind::One, TypeKind::Two { k: 1 }, TypeKind::Six { k: 1 }]
        );
        assert_eq!(
            TypeKind::admissible(4),
            vec![
                TypeKind::One,
                TypeKind::Two { k: 1 },
                TypeKind::Three,
                TypeKind::Five { l: 1 },
                TypeKind::Six { k: 1 },
                TypeKind::Seven
            ]
        );
        // 4_{k,l} first appears at n = 5
        assert!(TypeKind::admissible(5).contains(&TypeKind::Four { k: 2, l: 1 }));
        assert!(!TypeKind::admissible(4).iter().any(|t| matches!(t, TypeKind::Four { .. })));
    }

    #[test]
    fn admissible_matches_parameter_range() {
        // the kinds partition 0 <= l <= k <= n/2
        for n in 1..12u32 {
            let mut params: Vec<(u32, u32)> =
                TypeKind::admissible(n).iter().map(|t| t.parameters(n)).collect();
            params.sort();
            let mut expected = Vec::new();
            for k in 0..=n / 2 {
                for l in 0..=k {
                    expected.push((l, k));
                }
            }
            expected.sort();
            assert_eq!(params, expected, "n = {n}");
        }
    }

    #[test]
    fn classify_round_trip() {
        for n in 1..10u32 {
            for kind in TypeKind::admissible(n) {
                let e = kind.invariant_exponents(n);
                assert_eq!(TypeKind::classify(&e, n).unwrap(), kind);
            }
        }
        // n even, (n, n/2, n/2) is type 3 and not 2_k
        assert_eq!(TypeKind::classify(&[4, 2, 2], 4).unwrap(), TypeKind::Three);
        assert!(TypeKind::classify(&[4, 2], 4).is_err());
        assert!(TypeKind::classify(&[1, 1, 1, 1, 1], 2).is_err());
    }

    #[test]
    fn labels_parse_and_validate() {
        for n in 1..8u32 {
            for kind in TypeKind::admissible(n) {
                assert_eq!(kind.to_string().parse::<TypeKind>().unwrap(), kind);
            }
        }
        assert!(TypeLabel::new(2, 3, TypeKind::Three).is_err());
        assert!(TypeLabel::new(4, 2, TypeKind::Three).is_err());
        assert!(TypeLabel::new(2, 4, TypeKind::Two { k: 2 }).is_err());
        assert!(TypeLabel::new(2, 3, TypeKind::Two { k: 1 }).is_ok());
    }
}
