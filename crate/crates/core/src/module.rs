//! The finite symplectic module `K(d1,...,dg) = (Z/d1 x ... x Z/dg)^2`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, mod_inverse, valuation};
use crate::error::{Error, Result};
use crate::ptype::PolarizationType;

/// `K(d1,...,dg)` with the standard alternating pairing. Coordinates `i` and
/// `g + i` both have order `d_i`; the pairing takes values in `(1/dg)Z/Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticModule {
    ptype: PolarizationType,
    moduli: Vec<u64>,
}

/// An element of a module, each coordinate reduced modulo its modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleVector(Vec<u64>);

/// Additive pairing value `numerator / denominator` in `Q/Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairingValue {
    pub numerator: u64,
    pub denominator: u64,
}

impl PairingValue {
    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Order of the value in `Q/Z`, i.e. its reduced denominator.
    pub fn order(&self) -> u64 {
        self.denominator / crate::arith::gcd(self.numerator as i64, self.denominator as i64) as u64
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl ModuleVector {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub(crate) fn from_raw(coords: Vec<u64>) -> Self {
        Self(coords)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// One p-primary component of a module together with its embedding.
#[derive(Debug, Clone)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub module: Arc<SymplecticModule>,
    /// Per-coordinate multipliers of the symplectic embedding into the ambient module.
    embed_factors: Vec<u64>,
    /// Per-coordinate multipliers of the projection from the ambient module.
    project_factors: Vec<u64>,
}

impl SymplecticModule {
    pub fn new(ptype: PolarizationType) -> Result<Self> {
        let moduli: Vec<u64> = ptype.divisors().iter().chain(ptype.divisors()).copied().collect();
        let deg = ptype.degree() as u128;
        deg.checked_mul(deg).ok_or(Error::Overflow("module order"))?;
        if ptype.last() > i64::MAX as u64 / 4 {
            return Err(Error::Overflow("modulus too large"));
        }
        Ok(Self { ptype, moduli })
    }

    pub fn from_divisors(divisors: &[u64]) -> Result<Self> {
        Self::new(PolarizationType::new(divisors.to_vec())?)
    }

    pub fn ptype(&self) -> &PolarizationType {
        &self.ptype
    }

    pub fn g(&self) -> usize {
        self.ptype.g()
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `(d1,...,dg,d1,...,dg)`.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn pairing_denominator(&self) -> u64 {
        self.ptype.last()
    }

    /// `(d1 * ... * dg)^2`.
    pub fn order(&self) -> u128 {
        let d = self.ptype.degree() as u128;
        d * d
    }

    /// Order of a maximal isotropic subgroup.
    pub fn lagrangian_order(&self) -> u128 {
        self.ptype.degree() as u128
    }

    pub fn vector(&self, coords: Vec<u64>) -> Result<ModuleVector> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: coords.len() });
        }
        for (index, (&value, &modulus)) in coords.iter().zip(&self.moduli).enumerate() {
            if value >= modulus {
                return Err(Error::CoordinateOutOfRange { index, value, modulus });
            }
        }
        Ok(ModuleVector(coords))
    }

    /// Reduces arbitrary integer coordinates into a module vector.
    pub fn reduce(&self, coords: &[i64]) -> ModuleVector {
        assert_eq!(coords.len(), self.rank());
        ModuleVector(
            coords.iter().zip(&self.moduli).map(|(&x, &m)| x.rem_euclid(m as i64) as u64).collect(),
        )
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector(vec![0; self.rank()])
    }

    /// Standard generator `f_{i+1}` (0-based index `i`).
    pub fn basis_vector(&self, i: usize) -> ModuleVector {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.moduli[i];
        ModuleVector(v)
    }

    pub fn add(&self, x: &ModuleVector, y: &ModuleVector) -> ModuleVector {
        ModuleVector(
            x.0.iter().zip(&y.0).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect(),
        )
    }

    pub fn scale(&self, k: u64, x: &ModuleVector) -> ModuleVector {
        ModuleVector(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| ((a as u128 * k as u128) % m as u128) as u64)
                .collect(),
        )
    }

    /// The additive pairing: numerator `sum_i (D/d_i)(x_i y_{g+i} - x_{g+i} y_i) mod D`,
    /// so that `<f_i, f_{g+i}> = 1/d_i`.
    pub fn pairing(&self, x: &ModuleVector, y: &ModuleVector) -> PairingValue {
        let numerator = self.pairing_numerator(&x.0, &y.0);
        PairingValue { numerator, denominator: self.pairing_denominator() }
    }

    pub(crate) fn pairing_numerator<T: Copy + Into<i128>>(&self, x: &[T], y: &[T]) -> u64 {
        let g = self.g();
        let d = self.pairing_denominator() as i128;
        let mut acc: i128 = 0;
        for i in 0..g {
            let w = d / self.moduli[i] as i128;
            let xi: i128 = x[i].into();
            let xg: i128 = x[g + i].into();
            let yi: i128 = y[i].into();
            let yg: i128 = y[g + i].into();
            acc = (acc + w * ((xi * yg - xg * yi) % d)) % d;
        }
        acc.rem_euclid(d) as u64
    }

    /// Iterates all elements in lexicographic order (small modules only).
    pub fn elements(&self) -> impl Iterator<Item = ModuleVector> + '_ {
        let total = self.order();
        let moduli = self.moduli.clone();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u64; moduli.len()];
            for i in (0..moduli.len()).rev() {
                coords[i] = (idx % moduli[i] as u128) as u64;
                idx /= moduli[i] as u128;
            }
            ModuleVector(coords)
        })
    }

    /// Splits the module into its p-primary components `K(p^a1,...,p^ag)`,
    /// `a_i = v_p(d_i)`, one per prime dividing `d_g`, ascending.
    pub fn primary_decompose(&self) -> Vec<PrimaryComponent> {
        let g = self.g();
        factorize(self.pairing_denominator())
            .into_iter()
            .map(|(p, _)| {
                let qs: Vec<u64> = self
                    .ptype
                    .divisors()
                    .iter()
                    .map(|&d| p.pow(valuation(d, p)))
                    .collect();
                let module = Arc::new(
                    SymplecticModule::new(PolarizationType::new(qs.clone()).expect("chain"))
                        .expect("component of a valid module"),
                );
                let mut embed_factors = vec![0; 2 * g];
                let mut project_factors = vec![0; 2 * g];
                for i in 0..g {
                    let d = self.ptype.divisors()[i];
                    let q = qs[i];
                    let cofactor = d / q;
                    let inv = mod_inverse((cofactor % q) as i64, q as i64).expect("coprime") as u64;
                    // e_i = cofactor * inv is 1 mod q and 0 mod cofactor
                    embed_factors[i] = (cofactor as u128 * inv as u128 % d as u128) as u64;
                    embed_factors[g + i] = cofactor;
                    project_factors[i] = 1;
                    project_factors[g + i] = inv;
                }
                PrimaryComponent { prime: p, module, embed_factors, project_factors }
            })
            .collect()
    }
}

impl PrimaryComponent {
    /// Symplectic embedding of the component into the ambient module.
    pub fn embed(&self, ambient: &SymplecticModule, x: &ModuleVector) -> ModuleVector {
        ModuleVector(
            x.0.iter()
                .zip(&self.embed_factors)
                .zip(ambient.moduli())
                .map(|((&c, &f), &m)| ((c as u128 * f as u128) % m as u128) as u64)
                .collect(),
        )
    }

    /// Projection of an ambient element onto this component; `embed` after
    /// `project` gives the p-primary part of the element.
    pub fn project(&self, x: &ModuleVector) -> ModuleVector {
        ModuleVector(
            x.0.iter()
                .zip(&self.project_factors)
                .zip(self.module.moduli())
                .map(|((&c, &f), &q)| ((c as u128 * f as u128) % q as u128) as u64)
                .collect(),
        )
    }
}
