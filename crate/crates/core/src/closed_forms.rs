//! Closed-form counts of maximal isotropic subgroups.
//!
//! All arithmetic is exact; every division checks divisibility first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use crate::arith::sigma;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::types::TypeKind;

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn pow(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

fn ipow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::InexactDivision { numerator: a.to_string(), denominator: b.to_string() });
    }
    Ok(q)
}

/// `prod_{i=1..g} (p^i + 1)`: maximal isotropic subgroups of `K(p,...,p)`.
pub fn nu_elementary(p: u64, g: u32) -> Result<BigUint> {
    check_prime(p)?;
    if g == 0 {
        return Err(Error::OutOfRange("g must be positive".into()));
    }
    Ok((1..=g).map(|i| pow(p, i) + 1u32).product())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrders {
    /// `|Sp(2g, p)| = p^(g^2) prod_{i=1..g} (p^(2i) - 1)`.
    #[serde(with = "crate::count::decimal")]
    pub sp_order: BigUint,
    /// `|GL(g, p)| = prod_{i=0..g-1} (p^g - p^i)`.
    #[serde(with = "crate::count::decimal")]
    pub gl_order: BigUint,
    /// Stabilizer of a Lagrangian: `|GL(g, p)| * p^(g(g+1)/2)`.
    #[serde(with = "crate::count::decimal")]
    pub stabilizer_order: BigUint,
}

impl GroupOrders {
    /// `sp_order / stabilizer_order`, checked for exactness.
    pub fn orbit_size(&self) -> Result<BigUint> {
        let (q, r) = self.sp_order.div_rem(&self.stabilizer_order);
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                numerator: self.sp_order.to_string(),
                denominator: self.stabilizer_order.to_string(),
            });
        }
        Ok(q)
    }
}

pub fn group_orders(g: u32, p: u64) -> Result<GroupOrders> {
    check_prime(p)?;
    if g == 0 {
        return Err(Error::OutOfRange("g must be positive".into()));
    }
    let sp_order = pow(p, g * g) * (1..=g).map(|i| pow(p, 2 * i) - 1u32).product::<BigUint>();
    let gl_order: BigUint = (0..g).map(|i| pow(p, g) - pow(p, i)).product();
    let stabilizer_order = &gl_order * pow(p, g * (g + 1) / 2);
    Ok(GroupOrders { sp_order, gl_order, stabilizer_order })
}

/// Number of maximal isotropic subgroups of `K(p^n, p^n)` of the given kind.
pub fn nu_pp_by_type(p: u64, n: u32, kind: TypeKind) -> Result<BigUint> {
    check_prime(p)?;
    if !kind.is_admissible(n) {
        return Err(Error::InadmissibleLabel { label: kind.to_string(), n });
    }
    let base = pow(p, 2) + 1u32; // p^2 + 1
    let p1 = BigUint::from(p + 1);
    let exp = |e: i64| -> Result<BigUint> {
        u32::try_from(e)
            .map(|e| pow(p, e))
            .map_err(|_| Error::OutOfRange(format!("negative exponent for {kind} at n = {n}")))
    };
    let n = n as i64;
    Ok(match kind {
        TypeKind::One => exp(3 * n - 3)? * &base * &p1,
        TypeKind::Two { k } => exp(3 * n - 2 * k as i64 - 4)? * &base * &p1 * &p1,
        TypeKind::Three => exp(2 * n - 3)? * &base * &p1,
        TypeKind::Four { k, l } => {
            exp(3 * n - 4 * l as i64 - 2 * k as i64 - 4)? * &base * &p1 * &p1
        }
        TypeKind::Five { l } => exp(2 * n - 4 * l as i64 - 3)? * &base * &p1,
        TypeKind::Six { k } => exp(3 * n - 6 * k as i64 - 3)? * &base * &p1,
        TypeKind::Seven => BigUint::one(),
    })
}

/// Sum of the per-type counts over every admissible kind; `n = 0` gives 1.
pub fn nu_pp_total(p: u64, n: u32) -> Result<BigUint> {
    check_prime(p)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    TypeKind::admissible(n).into_iter().map(|kind| nu_pp_by_type(p, n, kind)).sum()
}

fn to_nonnegative(x: BigInt) -> Result<BigUint> {
    x.to_biguint().ok_or_else(|| Error::OutOfRange(format!("negative count {x}")))
}

/// Summed expression for `nu(p^(2m+1), p^(2m+1))`, valid for `m >= 2`.
pub fn nu_pp_odd_exponent(p: u64, m: u32) -> Result<BigUint> {
    check_prime(p)?;
    if m < 2 {
        return Err(Error::OutOfRange(format!("odd-exponent formula needs m >= 2, got {m}")));
    }
    let one = BigInt::one();
    let pb = BigInt::from(p);
    let pm1 = &pb - &one;
    let p2m1 = ipow(p, 2) - &one;
    let p6m1 = ipow(p, 6) - &one;
    let lead = (ipow(p, 2) + &one) * (&pb + &one);

    let first = ipow(p, 6 * m)
        + exact_div(&(ipow(p, 4 * m - 1) * (ipow(p, 2 * m) - &one)), &pm1)?
        + exact_div(&(ipow(p, 6 * m) - &one), &p6m1)?;
    let second = exact_div(&(ipow(p, 4 * m - 1) * (ipow(p, 2 * m - 2) - &one)), &p2m1)?
        - exact_div(&(ipow(p, 3) * (ipow(p, 6 * m - 6) - &one)), &p6m1)?;
    let total = lead * first + exact_div(&((&pb + &one) * second), &pm1)?;
    to_nonnegative(total)
}

/// Summed expression for `nu(p^(2m), p^(2m))`, valid for `m >= 3`.
pub fn nu_pp_even_exponent(p: u64, m: u32) -> Result<BigUint> {
    check_prime(p)?;
    if m < 3 {
        return Err(Error::OutOfRange(format!("even-exponent formula needs m >= 3, got {m}")));
    }
    let one = BigInt::one();
    let pb = BigInt::from(p);
    let pm1 = &pb - &one;
    let p2m1 = ipow(p, 2) - &one;
    let p4m1 = ipow(p, 4) - &one;
    let p6m1 = ipow(p, 6) - &one;
    let lead = (ipow(p, 2) + &one) * (&pb + &one);

    let first = ipow(p, 6 * m - 3)
        + ipow(p, 4 * m - 2) * exact_div(&(ipow(p, 2 * m - 2) - &one), &pm1)?
        + ipow(p, 4 * m - 3)
        + &pb * exact_div(&(ipow(p, 4 * m - 4) - &one), &p4m1)?
        + ipow(p, 3) * exact_div(&(ipow(p, 6 * m - 6) - &one), &p6m1)?;
    let second = ipow(p, 4 * m - 2) * exact_div(&(ipow(p, 2 * m - 4) - &one), &p2m1)?
        - ipow(p, 6) * exact_div(&(ipow(p, 6 * m - 12) - &one), &p6m1)?;
    let total = lead * first + exact_div(&((&pb + &one) * second), &pm1)? + one;
    to_nonnegative(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn elementary_values() {
        assert_eq!(nu_elementary(2, 2).unwrap(), big(15));
        assert_eq!(nu_elementary(5, 2).unwrap(), big(156));
        assert_eq!(nu_elementary(2, 3).unwrap(), big(135));
        assert_eq!(nu_elementary(3, 2).unwrap(), big(40));
        assert!(nu_elementary(4, 2).is_err());
    }

    #[test]
    fn group_order_values() {
        let o = group_orders(2, 2).unwrap();
        assert_eq!(o.sp_order, big(720));
        assert_eq!(o.gl_order, big(6));
        assert_eq!(o.stabilizer_order, big(48));
        assert_eq!(o.orbit_size().unwrap(), big(15));
        for p in [2u64, 3, 5, 7] {
            let o = group_orders(1, p).unwrap();
            assert_eq!(o.sp_order, big(p * (p * p - 1)));
            assert_eq!(o.stabilizer_order, big((p - 1) * p));
            assert_eq!(o.orbit_size().unwrap(), big(p + 1));
        }
        assert_eq!(group_orders(2, 3).unwrap().orbit_size().unwrap(), big(40));
    }

    #[test]
    fn group_order_quotient_identity() {
        for g in 1..=4 {
            for p in [2u64, 3, 5, 7, 11, 13] {
                assert_eq!(
                    group_orders(g, p).unwrap().orbit_size().unwrap(),
                    nu_elementary(p, g).unwrap(),
                    "g = {g}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn per_type_values() {
        assert_eq!(nu_pp_by_type(2, 3, TypeKind::One).unwrap(), big(960));
        assert_eq!(nu_pp_by_type(2, 3, TypeKind::Two { k: 1 }).unwrap(), big(360));
        assert_eq!(nu_pp_by_type(2, 3, TypeKind::Six { k: 1 }).unwrap(), big(15));
        assert_eq!(nu_pp_by_type(2, 4, TypeKind::Five { l: 1 }).unwrap(), big(30));
        for p in [2u64, 3, 5] {
            for k in 1..5 {
                assert_eq!(nu_pp_by_type(p, 2 * k, TypeKind::Seven).unwrap(), big(1));
            }
        }
        assert!(nu_pp_by_type(2, 3, TypeKind::Three).is_err());
        assert!(nu_pp_by_type(2, 4, TypeKind::Four { k: 1, l: 1 }).is_err());
    }

    #[test]
    fn totals() {
        assert_eq!(nu_pp_total(2, 0).unwrap(), big(1));
        assert_eq!(nu_pp_total(2, 1).unwrap(), big(15));
        assert_eq!(nu_pp_total(2, 2).unwrap(), big(151));
        assert_eq!(nu_pp_total(3, 2).unwrap(), big(1201));
        assert_eq!(nu_pp_total(2, 3).unwrap(), big(1335));
        assert_eq!(nu_pp_total(2, 4).unwrap(), big(11191));
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(nu_pp_total(p, 1).unwrap(), nu_elementary(p, 2).unwrap());
        }
    }

    #[test]
    fn summed_expressions() {
        assert_eq!(nu_pp_odd_exponent(2, 2).unwrap(), big(91575));
        assert_eq!(nu_pp_even_exponent(2, 3).unwrap(), big(740791));
        assert_eq!(nu_pp_odd_exponent(3, 2).unwrap(), nu_pp_total(3, 5).unwrap());
        assert!(nu_pp_odd_exponent(2, 1).is_err());
        assert!(nu_pp_even_exponent(2, 2).is_err());
    }
}
