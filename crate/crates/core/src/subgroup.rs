//! Subgroups of a symplectic module, stored as canonical Hermite bases of
//! their preimage lattices `diag(moduli) Z^2g ⊆ L ⊆ Z^2g`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{self, hermite_with_moduli};
use crate::module::{ModuleVector, PrimaryComponent, SymplecticModule};

#[derive(Debug, Clone)]
pub struct Subgroup {
    module: Arc<SymplecticModule>,
    basis: Vec<Vec<i64>>,
    order: u128,
}

fn signed_moduli(module: &SymplecticModule) -> Vec<i64> {
    module.moduli().iter().map(|&m| m as i64).collect()
}

fn order_of_basis(module: &SymplecticModule, basis: &[Vec<i64>]) -> u128 {
    module
        .moduli()
        .iter()
        .enumerate()
        .map(|(i, &m)| m as u128 / basis[i][i] as u128)
        .product()
}

impl Subgroup {
    /// The subgroup generated by `gens`, in canonical form.
    pub fn from_generators(module: &Arc<SymplecticModule>, gens: &[ModuleVector]) -> Self {
        let rows: Vec<Vec<i64>> =
            gens.iter().map(|v| v.coords().iter().map(|&x| x as i64).collect()).collect();
        Self::from_integer_rows(module, &rows)
    }

    /// The subgroup generated by the images of arbitrary integer vectors.
    pub fn from_integer_rows(module: &Arc<SymplecticModule>, rows: &[Vec<i64>]) -> Self {
        let basis = hermite_with_moduli(rows, &signed_moduli(module));
        Self::from_canonical_basis(Arc::clone(module), basis)
    }

    pub(crate) fn from_canonical_basis(module: Arc<SymplecticModule>, basis: Vec<Vec<i64>>) -> Self {
        let order = order_of_basis(&module, &basis);
        Self { module, basis, order }
    }

    pub fn trivial(module: &Arc<SymplecticModule>) -> Self {
        Self::from_generators(module, &[])
    }

    pub fn whole(module: &Arc<SymplecticModule>) -> Self {
        let gens: Vec<_> = (0..module.rank()).map(|i| module.basis_vector(i)).collect();
        Self::from_generators(module, &gens)
    }

    pub fn module(&self) -> &Arc<SymplecticModule> {
        &self.module
    }

    /// Canonical upper-triangular basis of the preimage lattice.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Basis rows reduced into the module, zero rows dropped.
    pub fn generators(&self) -> Vec<ModuleVector> {
        self.basis
            .iter()
            .map(|r| self.module.reduce(r))
            .filter(|v| v.coords().iter().any(|&x| x != 0))
            .collect()
    }

    pub fn contains(&self, x: &ModuleVector) -> bool {
        let v: Vec<i64> = x.coords().iter().map(|&c| c as i64).collect();
        lattice::contains(&self.basis, &v)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_module(other) && self.basis.iter().all(|r| lattice::contains(&other.basis, r))
    }

    fn same_module(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.module, &other.module) || self.module == other.module
    }

    /// The subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert!(self.same_module(other), "join of subgroups from different modules");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_integer_rows(&self.module, &rows)
    }

    /// All elements, by running each basis coefficient over `[0, m_i / a_ii)`.
    pub fn elements(&self) -> Vec<ModuleVector> {
        let n = self.module.rank();
        let ranges: Vec<i64> = (0..n)
            .map(|i| self.module.moduli()[i] as i64 / self.basis[i][i])
            .collect();
        let mut out = Vec::with_capacity(self.order as usize);
        let mut coeffs = vec![0i64; n];
        loop {
            let mut v = vec![0i64; n];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for k in 0..n {
                        v[k] += c * row[k];
                    }
                }
            }
            out.push(self.module.reduce(&v));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < ranges[i] {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Isotropy tested on basis rows only; bilinearity extends it to the span.
    pub fn is_isotropic(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.module.pairing_numerator(&self.basis[i], &self.basis[j]) == 0)
        })
    }

    /// Isotropy tested on every pair of elements.
    pub fn is_isotropic_pairwise(&self) -> bool {
        let elems = self.elements();
        elems.iter().all(|x| elems.iter().all(|y| self.module.pairing(x, y).is_zero()))
    }

    pub fn is_maximal_isotropic(&self) -> bool {
        self.order == self.module.lagrangian_order() && self.is_isotropic()
    }

    /// `{x : <x, h> = 0 for all h in H}`, from the linear congruences
    /// `x · c_h ≡ 0 (mod D)` given by the basis rows.
    pub fn orthogonal_complement(&self) -> Subgroup {
        let module = &self.module;
        let g = module.g();
        let n = module.rank();
        let d = module.pairing_denominator() as i64;
        let weights: Vec<i64> = (0..g).map(|i| d / module.moduli()[i] as i64).collect();

        // columns are constraint vectors, one per basis row
        let mut a = vec![vec![BigInt::zero(); self.basis.len()]; n];
        for (col, b) in self.basis.iter().enumerate() {
            for j in 0..g {
                a[j][col] = BigInt::from(weights[j] * b[g + j]);
                a[g + j][col] = BigInt::from(-weights[j] * b[j]);
            }
        }
        let diag = lattice::diagonalize(&a);
        let big_d = BigInt::from(d);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                let s = diag.diagonal.get(k).cloned().unwrap_or_else(BigInt::zero);
                let factor = &big_d / big_d.gcd(&s.abs());
                diag.left[k]
                    .iter()
                    .zip(module.moduli())
                    .map(|(u, &m)| {
                        (&factor * u).mod_floor(&BigInt::from(m)).to_i64().expect("reduced")
                    })
                    .collect()
            })
            .collect();
        Self::from_integer_rows(module, &rows)
    }

    /// Invariant factors of the subgroup as an abstract group, ascending,
    /// without unit entries.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let n = self.module.rank();
        // rows of X solve X * basis = diag(moduli)
        let mut x = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            let mut target: Vec<BigInt> = vec![BigInt::zero(); n];
            target[i] = BigInt::from(self.module.moduli()[i]);
            for j in 0..n {
                let mut acc = target[j].clone();
                for k in 0..j {
                    acc -= &x[i][k] * BigInt::from(self.basis[k][j]);
                }
                let (q, r) = acc.div_rem(&BigInt::from(self.basis[j][j]));
                assert!(r.is_zero(), "basis does not contain the modulus lattice");
                x[i][j] = q;
            }
        }
        lattice::invariant_factors(&x)
            .into_iter()
            .map(|f| f.to_u64().expect("invariant factor fits"))
            .collect()
    }

    /// The image of this subgroup in a p-primary component.
    pub fn primary_part(&self, component: &PrimaryComponent) -> Subgroup {
        let gens: Vec<_> = self.generators().iter().map(|v| component.project(v)).collect();
        Subgroup::from_generators(&component.module, &gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_module(other) && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.module.moduli().hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.module
            .moduli()
            .cmp(other.module.moduli())
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> of order {}", self.order)
    }
}
