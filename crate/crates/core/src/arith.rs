//! Elementary integer arithmetic: factorization and the divisor-sum function.

use num_bigint::BigUint;
use num_traits::One;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `n`; `n` must be nonzero.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Sum of the positive divisors of `d`, evaluated multiplicatively
/// as a product of `(p^(a+1) - 1) / (p - 1)` over the factorization.
pub fn sigma(d: u64) -> BigUint {
    assert!(d >= 1, "sigma is defined for positive integers");
    factorize(d)
        .into_iter()
        .map(|(p, a)| sigma_prime_power(p, a))
        .product()
}

/// `1 + p + ... + p^a`.
pub fn sigma_prime_power(p: u64, a: u32) -> BigUint {
    let p = BigUint::from(p);
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for _ in 0..a {
        term *= &p;
        sum += &term;
    }
    sum
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m` (`m >= 1`), if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd(a.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_naive(d: u64) -> u64 {
        (1..=d).filter(|k| d.is_multiple_of(*k)).sum()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), BigUint::from(1u32));
        assert_eq!(sigma(2), BigUint::from(3u32));
        assert_eq!(sigma(12), BigUint::from(28u32));
        for d in 1..500 {
            assert_eq!(sigma(d), BigUint::from(sigma_naive(d)), "d = {d}");
        }
    }

    #[test]
    fn sigma_multiplicative_and_prime_powers() {
        for a in 1..40u64 {
            for b in 1..40u64 {
                if gcd(a as i64, b as i64) == 1 {
                    assert_eq!(sigma(a * b), sigma(a) * sigma(b));
                }
            }
        }
        for (p, a) in [(2u64, 5u32), (3, 4), (7, 3)] {
            let pa = p.pow(a);
            assert_eq!(sigma(pa), BigUint::from((p.pow(a + 1) - 1) / (p - 1)));
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(valuation(48, 2), 4);
        assert!(is_prime(13) && !is_prime(15) && !is_prime(1));
    }

    #[test]
    fn xgcd_identity() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a + t * b, g);
            }
        }
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 8), None);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }
}
