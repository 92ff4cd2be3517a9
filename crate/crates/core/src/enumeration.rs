//! Exhaustive enumeration of subgroups by canonical Hermite basis.
//!
//! A subgroup corresponds to a lattice `Λ ⊆ L ⊆ Z^2g` with `Λ = diag(moduli)`.
//! Its canonical basis is upper triangular with pivot `a_i | m_i` and entries
//! above pivot `a_j` in `[0, a_j)`. The search fixes the pivot tuple (one
//! partition per tuple, searched in parallel), then fills rows bottom-up.
//! Each row must satisfy `(m_i / a_i) * row ∈ L` (containment of `Λ`) and,
//! for maximal isotropic searches, pair trivially with every row below it.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, valuation};
use crate::error::{Error, Result};
use crate::module::SymplecticModule;
use crate::quotient::SymplecticQuotient;
use crate::subgroup::Subgroup;
use crate::types::TypeKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Cap on row candidates examined.
    pub max_candidates: u64,
    /// Wall-clock cap.
    pub max_seconds: f64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self { max_candidates: 1_000_000_000, max_seconds: 600.0 }
    }
}

impl EnumerationBudget {
    pub fn new(max_candidates: u64, max_seconds: f64) -> Result<Self> {
        if max_candidates == 0 || max_seconds.is_nan() || max_seconds <= 0.0 {
            return Err(Error::OutOfRange("budget limits must be positive".into()));
        }
        Ok(Self { max_candidates, max_seconds })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub candidates: u64,
    pub found: u64,
    pub elapsed_ms: u64,
}

/// Per-type counts of the maximal isotropic subgroups of `K(p^n, p^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCensus {
    pub p: u64,
    pub n: u32,
    pub counts: BTreeMap<TypeKind, u64>,
    pub total: u64,
}

impl TypeCensus {
    pub fn get(&self, kind: TypeKind) -> u64 {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy)]
enum Target {
    MaximalIsotropic,
    Order(Option<u128>),
}

struct Shared {
    budget: EnumerationBudget,
    start: Instant,
    candidates: AtomicU64,
    found: AtomicU64,
    abort: AtomicBool,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl Shared {
    fn stats(&self) -> EnumerationStats {
        EnumerationStats {
            candidates: self.candidates.load(Ordering::Relaxed),
            found: self.found.load(Ordering::Relaxed),
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

struct Search<'a, A, F> {
    moduli: Vec<i64>,
    weights: Vec<i64>,
    denom: i64,
    isotropic: bool,
    shared: &'a Shared,
    visit: &'a F,
    acc: A,
    basis: Vec<Vec<i64>>,
    local_candidates: u64,
    local_found: u64,
}

impl<A, F: Fn(&mut A, &[Vec<i64>])> Search<'_, A, F> {
    fn flush(&mut self) {
        let c = self.shared.candidates.fetch_add(self.local_candidates, Ordering::Relaxed)
            + self.local_candidates;
        self.shared.found.fetch_add(self.local_found, Ordering::Relaxed);
        self.local_candidates = 0;
        self.local_found = 0;
        if c > self.shared.budget.max_candidates
            || self.shared.start.elapsed().as_secs_f64() > self.shared.budget.max_seconds
        {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
    }

    fn aborted(&self) -> bool {
        self.shared.abort.load(Ordering::Relaxed)
    }

    fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let g = self.weights.len();
        let mut acc = 0i64;
        for i in 0..g {
            acc += self.weights[i] * ((x[i] * y[g + i] - x[g + i] * y[i]) % self.denom);
            acc %= self.denom;
        }
        acc
    }

    fn fill_row(&mut self, row: usize) {
        if self.aborted() {
            return;
        }
        let q = self.moduli[row] / self.basis[row][row];
        let mut carry = vec![0i64; self.moduli.len()];
        self.fill_entry(row, row + 1, q, &mut carry);
    }

    /// Chooses entry `(row, col)`; `carry` holds `sum c_l * basis[l]` over
    /// pivot rows already used to cancel `q * row` on columns `< col`.
    fn fill_entry(&mut self, row: usize, col: usize, q: i64, carry: &mut Vec<i64>) {
        let n = self.moduli.len();
        if col == n {
            self.finish_row(row);
            return;
        }
        let a = self.basis[col][col];
        for t in 0..a {
            let residual = q * t - carry[col];
            if residual.rem_euclid(a) != 0 {
                continue;
            }
            let c = residual / a;
            self.basis[row][col] = t;
            if c != 0 {
                for k in col + 1..n {
                    carry[k] += c * self.basis[col][k];
                }
            }
            self.fill_entry(row, col + 1, q, carry);
            if c != 0 {
                for k in col + 1..n {
                    carry[k] -= c * self.basis[col][k];
                }
            }
            if self.aborted() {
                break;
            }
        }
        self.basis[row][col] = 0;
    }

    fn finish_row(&mut self, row: usize) {
        self.local_candidates += 1;
        if self.local_candidates >= FLUSH_EVERY {
            self.flush();
        }
        if self.isotropic {
            let n = self.moduli.len();
            for j in row + 1..n {
                if self.pairing(&self.basis[row], &self.basis[j]) != 0 {
                    return;
                }
            }
        }
        if row == 0 {
            self.local_found += 1;
            (self.visit)(&mut self.acc, &self.basis);
        } else {
            self.fill_row(row - 1);
        }
    }
}

/// Pivot tuples `a_i | m_i`, lexicographic, optionally with prescribed product.
fn pivot_tuples(moduli: &[u64], product: Option<u128>) -> Vec<Vec<u64>> {
    fn rec(moduli: &[u64], i: usize, remaining: Option<u128>, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == moduli.len() {
            if remaining.is_none_or(|r| r == 1) {
                out.push(cur.clone());
            }
            return;
        }
        for a in divisors(moduli[i]) {
            if let Some(r) = remaining {
                if r % a as u128 != 0 {
                    continue;
                }
            }
            cur.push(a);
            rec(moduli, i + 1, remaining.map(|r| r / a as u128), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(moduli, 0, product, &mut Vec::new(), &mut out);
    out
}

/// Runs the search, folding each canonical basis found into a per-partition
/// accumulator. Accumulators come back in partition order.
fn search<A, I, F>(
    module: &SymplecticModule,
    target: Target,
    budget: &EnumerationBudget,
    init: I,
    visit: F,
) -> Result<(Vec<A>, EnumerationStats)>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[Vec<i64>]) + Sync,
{
    let total_order = module.order();
    let (isotropic, pivot_product) = match target {
        Target::MaximalIsotropic => (true, Some(total_order / module.lagrangian_order())),
        Target::Order(Some(order)) => {
            if order == 0 || !total_order.is_multiple_of(order) {
                return Ok((Vec::new(), EnumerationStats::default()));
            }
            (false, Some(total_order / order))
        }
        Target::Order(None) => (false, None),
    };
    let tuples = pivot_tuples(module.moduli(), pivot_product);
    let shared = Shared {
        budget: *budget,
        start: Instant::now(),
        candidates: AtomicU64::new(0),
        found: AtomicU64::new(0),
        abort: AtomicBool::new(false),
    };
    let moduli: Vec<i64> = module.moduli().iter().map(|&m| m as i64).collect();
    let g = module.g();
    let denom = module.pairing_denominator() as i64;
    let weights: Vec<i64> = (0..g).map(|i| denom / moduli[i]).collect();
    let n = moduli.len();

    let accs: Vec<A> = tuples
        .par_iter()
        .map(|tuple| {
            let mut basis = vec![vec![0i64; n]; n];
            for (i, &a) in tuple.iter().enumerate() {
                basis[i][i] = a as i64;
            }
            let mut s = Search {
                moduli: moduli.clone(),
                weights: weights.clone(),
                denom,
                isotropic,
                shared: &shared,
                visit: &visit,
                acc: init(),
                basis,
                local_candidates: 0,
                local_found: 0,
            };
            s.fill_row(n - 1);
            s.flush();
            s.acc
        })
        .collect();

    let stats = shared.stats();
    if shared.abort.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(stats));
    }
    Ok((accs, stats))
}

fn collect_subgroups(
    module: &Arc<SymplecticModule>,
    target: Target,
    budget: &EnumerationBudget,
) -> Result<Vec<Subgroup>> {
    let (parts, _) = search(module, target, budget, Vec::new, |acc: &mut Vec<Vec<Vec<i64>>>, b| {
        acc.push(b.to_vec())
    })?;
    let mut bases: Vec<Vec<Vec<i64>>> = parts.into_iter().flatten().collect();
    bases.sort();
    Ok(bases
        .into_iter()
        .map(|b| Subgroup::from_canonical_basis(Arc::clone(module), b))
        .collect())
}

/// All maximal isotropic subgroups, sorted by canonical basis.
pub fn enumerate_maximal_isotropic(
    module: &Arc<SymplecticModule>,
    budget: &EnumerationBudget,
) -> Result<Vec<Subgroup>> {
    collect_subgroups(module, Target::MaximalIsotropic, budget)
}

/// All subgroups (of the given order, if any), sorted by canonical basis.
/// No isotropy pruning; used as an independent oracle on small modules.
pub fn enumerate_subgroups(
    module: &Arc<SymplecticModule>,
    order: Option<u128>,
    budget: &EnumerationBudget,
) -> Result<Vec<Subgroup>> {
    collect_subgroups(module, Target::Order(order), budget)
}

/// Number of maximal isotropic subgroups, enumerated on the module as given.
pub fn count_direct(module: &SymplecticModule, budget: &EnumerationBudget) -> Result<u64> {
    count_direct_with_stats(module, budget).map(|(c, _)| c)
}

pub fn count_direct_with_stats(
    module: &SymplecticModule,
    budget: &EnumerationBudget,
) -> Result<(u64, EnumerationStats)> {
    let (parts, stats) =
        search(module, Target::MaximalIsotropic, budget, || 0u64, |acc, _| *acc += 1)?;
    Ok((parts.into_iter().sum(), stats))
}

/// Number of maximal isotropic subgroups, as the product of direct counts
/// over the primary components.
pub fn count_maximal_isotropic(
    module: &SymplecticModule,
    budget: &EnumerationBudget,
) -> Result<BigUint> {
    let mut total = BigUint::one();
    for comp in module.primary_decompose() {
        total *= BigUint::from(count_direct(&comp.module, budget)?);
    }
    Ok(total)
}

/// Classifies every maximal isotropic subgroup of `K(p^n, p^n)` by type.
pub fn census_by_type(p: u64, n: u32, budget: &EnumerationBudget) -> Result<TypeCensus> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::OutOfRange("census needs n >= 1".into()));
    }
    let q = p.checked_pow(n).ok_or(Error::Overflow("p^n"))?;
    let module = Arc::new(SymplecticModule::from_divisors(&[q, q])?);
    let (parts, _) = search(
        &module,
        Target::MaximalIsotropic,
        budget,
        || Ok(BTreeMap::<TypeKind, u64>::new()),
        |acc: &mut Result<BTreeMap<TypeKind, u64>>, b| {
            let Ok(map) = acc else { return };
            let h = Subgroup::from_canonical_basis(Arc::clone(&module), b.to_vec());
            let exps: Vec<u32> = h.abelian_invariants().iter().map(|&f| valuation(f, p)).collect();
            match TypeKind::classify(&exps, n) {
                Ok(kind) => *map.entry(kind).or_insert(0) += 1,
                Err(e) => *acc = Err(e),
            }
        },
    )?;
    let mut counts = BTreeMap::new();
    for part in parts {
        for (k, v) in part? {
            *counts.entry(k).or_insert(0) += v;
        }
    }
    let total = counts.values().sum();
    Ok(TypeCensus { p, n, counts, total })
}

/// Number of maximal isotropic subgroups containing the isotropic `w`,
/// counted on the quotient `W^⊥/W`.
pub fn count_containing(w: &Subgroup, budget: &EnumerationBudget) -> Result<BigUint> {
    let quotient = SymplecticQuotient::new(w)?;
    count_maximal_isotropic(quotient.target(), budget)
}
