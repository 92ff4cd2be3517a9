//! Integer lattice normal forms.
//!
//! Every lattice handled here contains the diagonal lattice of a modulus
//! vector, so Hermite reduction can be carried out with entries reduced
//! modulo the column modulus and stays in machine integers. Smith forms are
//! computed over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::xgcd;

/// Row-style Hermite form of the lattice spanned by `rows` together with
/// `diag(moduli)`.
///
/// The result is square, upper triangular, with positive diagonal entries
/// dividing the column moduli and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_with_moduli(rows: &[Vec<i64>], moduli: &[i64]) -> Vec<Vec<i64>> {
    let n = moduli.len();
    let mut work: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "row length must match the number of moduli");
            r.iter().zip(moduli).map(|(x, m)| x.rem_euclid(*m)).collect()
        })
        .filter(|r: &Vec<i64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut basis: Vec<Vec<i64>> = Vec::with_capacity(n);

    for j in 0..n {
        let mut pivot = vec![0i64; n];
        pivot[j] = moduli[j];
        let mut rest = Vec::with_capacity(work.len());
        for mut r in work.drain(..) {
            if r[j] != 0 {
                let (g, s, t) = xgcd(pivot[j], r[j]);
                let (pa, ra) = (pivot[j] / g, r[j] / g);
                let mut new_pivot = vec![0i64; n];
                for k in j..n {
                    let m = moduli[k] as i128;
                    let p = pivot[k] as i128;
                    let x = r[k] as i128;
                    new_pivot[k] = ((s as i128 * p + t as i128 * x).rem_euclid(m)) as i64;
                    r[k] = ((ra as i128 * p - pa as i128 * x).rem_euclid(m)) as i64;
                }
                // column j of the pivot must stay the exact gcd, not its residue
                new_pivot[j] = g;
                r[j] = 0;
                pivot = new_pivot;
            }
            if r.iter().any(|&x| x != 0) {
                rest.push(r);
            }
        }
        work = rest;
        basis.push(pivot);
    }
    debug_assert!(work.is_empty());

    for j in 1..n {
        let a = basis[j][j];
        for i in 0..j {
            let q = basis[i][j].div_euclid(a);
            if q != 0 {
                let (head, tail) = basis.split_at_mut(j);
                for k in j..n {
                    head[i][k] -= q * tail[0][k];
                }
            }
        }
    }
    basis
}

/// Reduces `v` against an upper-triangular Hermite basis; the result is the
/// canonical representative of `v` modulo the lattice.
pub fn reduce(v: &[i64], basis: &[Vec<i64>]) -> Vec<i64> {
    let mut v = v.to_vec();
    for (j, row) in basis.iter().enumerate() {
        let q = v[j].div_euclid(row[j]);
        if q != 0 {
            for k in j..v.len() {
                v[k] -= q * row[k];
            }
        }
    }
    v
}

pub fn contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    reduce(v, basis).iter().all(|&x| x == 0)
}

/// Diagonalization `U * A * V = diag(s)` with unimodular `U`.
pub struct Diagonalization {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
}

/// Diagonalizes an `m x n` integer matrix by unimodular row and column
/// operations, tracking the row transform.
pub fn diagonalize(a: &[Vec<BigInt>]) -> Diagonalization {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                let mut diagonal: Vec<BigInt> = (0..steps).map(|k| a[k][k].clone()).collect();
                for d in diagonal.iter_mut().skip(t) {
                    *d = BigInt::zero();
                }
                return Diagonalization { diagonal, left: u };
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for k in t..n {
                        let s = &q * &a[t][k];
                        a[i][k] -= s;
                    }
                    for k in 0..m {
                        let s = &q * &u[t][k];
                        u[i][k] -= s;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
    }
    let diagonal = (0..steps).map(|k| a[k][k].clone()).collect();
    Diagonalization { diagonal, left: u }
}

/// Invariant factors (each dividing the next) of the cokernel of `a`,
/// with unit factors dropped and zero factors reported as 0.
pub fn invariant_factors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diagonalize(a).diagonal.into_iter().map(|x| x.abs()).collect();
    // normalize a diagonal into a divisibility chain via gcd/lcm swaps
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (x, y) = (d[i].clone(), d[j].clone());
            if x.is_zero() {
                d.swap(i, j);
                continue;
            }
            if y.is_zero() {
                continue;
            }
            d[i] = x.gcd(&y);
            d[j] = x.lcm(&y);
        }
    }
    d.into_iter().filter(|x| !x.is_one()).collect()
}
