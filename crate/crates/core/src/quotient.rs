//! The symplectic quotient `W^⊥/W` of an isotropic subgroup `W`.
//!
//! The quotient carries a nondegenerate induced pairing. Its type is found
//! by splitting off hyperbolic pairs greedily: take the lexicographically
//! smallest element of maximal order, pair it with the smallest partner whose
//! pairing value has the same order, pass to the orthogonal complement of the
//! pair, repeat.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arith::mod_inverse;
use crate::error::{Error, Result};
use crate::lattice;
use crate::module::{ModuleVector, SymplecticModule};
use crate::ptype::PolarizationType;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone)]
pub struct SymplecticQuotient {
    isotropic: Subgroup,
    complement: Subgroup,
    target: Arc<SymplecticModule>,
    /// Hyperbolic pairs `(x_i, y_i)` as ambient representatives, `<x_i, y_i> = 1/e_i`.
    pairs: Vec<(Vec<i64>, Vec<i64>)>,
    /// `e_i`, descending.
    orders: Vec<u64>,
}

struct QuotientArith<'a> {
    module: &'a SymplecticModule,
    w_basis: &'a [Vec<i64>],
}

impl QuotientArith<'_> {
    fn canon(&self, v: &[i64]) -> Vec<i64> {
        lattice::reduce(v, self.w_basis)
    }

    fn scale(&self, k: i64, v: &[i64]) -> Vec<i64> {
        let scaled: Vec<i64> = v.iter().map(|&x| x * k).collect();
        self.canon(&scaled)
    }

    fn order(&self, v: &[i64]) -> u64 {
        let mut t = 1;
        let mut acc = v.to_vec();
        while acc.iter().any(|&x| x != 0) {
            t += 1;
            let sum: Vec<i64> = acc.iter().zip(v).map(|(a, b)| a + b).collect();
            acc = self.canon(&sum);
        }
        t
    }

    /// Order of the pairing value in `Q/Z`.
    fn pairing_order(&self, x: &[i64], y: &[i64]) -> u64 {
        let d = self.module.pairing_denominator();
        let num = self.module.pairing_numerator(x, y);
        d / crate::arith::gcd(num as i64, d as i64) as u64
    }
}

impl SymplecticQuotient {
    pub fn new(isotropic: &Subgroup) -> Result<Self> {
        if !isotropic.is_isotropic() {
            return Err(Error::NotIsotropic);
        }
        let module = Arc::clone(isotropic.module());
        let complement = isotropic.orthogonal_complement();
        let arith = QuotientArith { module: &module, w_basis: isotropic.basis() };

        let mut current: Vec<Vec<i64>> = complement
            .elements()
            .iter()
            .map(|x| arith.canon(&x.coords().iter().map(|&c| c as i64).collect::<Vec<_>>()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let quotient_order = current.len() as u128;

        let mut pairs = Vec::new();
        let mut orders = Vec::new();
        while current.len() > 1 {
            let element_orders: Vec<u64> = current.iter().map(|v| arith.order(v)).collect();
            let exponent = *element_orders.iter().max().expect("nonempty");
            // `current` is sorted, so the first hit is the lexicographic minimum
            let x = current[element_orders.iter().position(|&o| o == exponent).unwrap()].clone();
            let y = current
                .iter()
                .find(|y| arith.pairing_order(&x, y) == exponent)
                .expect("induced pairing is nondegenerate")
                .clone();
            let d = module.pairing_denominator();
            let num = module.pairing_numerator(&x, &y);
            let unit = (num as u128 * exponent as u128 / d as u128) as i64;
            let inv = mod_inverse(unit, exponent as i64).expect("unit");
            let y = arith.scale(inv, &y);
            debug_assert_eq!(
                module.pairing_numerator(&x, &y) as u128 * exponent as u128,
                d as u128
            );
            current.retain(|z| {
                module.pairing_numerator(z, &x) == 0 && module.pairing_numerator(z, &y) == 0
            });
            pairs.push((x, y));
            orders.push(exponent);
        }
        let recovered: u128 = orders.iter().map(|&e| (e as u128) * (e as u128)).product();
        assert_eq!(recovered, quotient_order, "hyperbolic pairs must exhaust the quotient");

        let g = module.g();
        let mut divisors: Vec<u64> = orders.iter().rev().copied().collect();
        if divisors.is_empty() {
            divisors.push(1);
        }
        let ptype = PolarizationType::new(divisors).expect("greedy orders form a chain").pad_to(g);
        let target = Arc::new(SymplecticModule::new(ptype)?);
        Ok(Self { isotropic: isotropic.clone(), complement, target, pairs, orders })
    }

    pub fn target(&self) -> &Arc<SymplecticModule> {
        &self.target
    }

    pub fn isotropic(&self) -> &Subgroup {
        &self.isotropic
    }

    pub fn complement(&self) -> &Subgroup {
        &self.complement
    }

    /// Target coordinate index of the `i`-th extracted pair.
    fn slot(&self, i: usize) -> usize {
        self.target.g() - 1 - i
    }

    /// Image of an element of `W^⊥` in the target module.
    pub fn map_element(&self, x: &ModuleVector) -> Result<ModuleVector> {
        if !self.complement.contains(x) {
            return Err(Error::NotInRange("element outside W^⊥"));
        }
        let module = self.isotropic.module();
        let d = module.pairing_denominator() as u128;
        let v: Vec<i64> = x.coords().iter().map(|&c| c as i64).collect();
        let g = self.target.g();
        let mut out = vec![0u64; 2 * g];
        for (i, ((xi, yi), &e)) in self.pairs.iter().zip(&self.orders).enumerate() {
            let e128 = e as u128;
            let alpha = module.pairing_numerator(&v, yi) as u128 * e128 / d;
            let beta = module.pairing_numerator(&v, xi) as u128 * e128 / d;
            let s = self.slot(i);
            out[s] = (alpha % e128) as u64;
            out[g + s] = ((e128 - beta % e128) % e128) as u64;
        }
        Ok(ModuleVector::from_raw(out))
    }

    /// A representative in `W^⊥` of a target element.
    pub fn lift_element(&self, v: &ModuleVector) -> ModuleVector {
        let module = self.isotropic.module();
        let g = self.target.g();
        let mut acc = vec![0i64; module.rank()];
        for (i, (xi, yi)) in self.pairs.iter().enumerate() {
            let s = self.slot(i);
            let (a, b) = (v.coords()[s] as i64, v.coords()[g + s] as i64);
            for k in 0..acc.len() {
                acc[k] += a * xi[k] + b * yi[k];
            }
        }
        module.reduce(&acc)
    }

    /// Image of a subgroup `W ⊆ H ⊆ W^⊥`.
    pub fn project(&self, h: &Subgroup) -> Result<Subgroup> {
        if !self.isotropic.is_subgroup_of(h) {
            return Err(Error::NotInRange("subgroup does not contain W"));
        }
        if !h.is_subgroup_of(&self.complement) {
            return Err(Error::NotInRange("subgroup not contained in W^⊥"));
        }
        let gens = h
            .generators()
            .iter()
            .map(|x| self.map_element(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::from_generators(&self.target, &gens))
    }

    /// Preimage of a target subgroup; always lies between `W` and `W^⊥`.
    pub fn lift(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.module().as_ref() != self.target.as_ref() {
            return Err(Error::ModuleMismatch);
        }
        let gens: Vec<_> = h.generators().iter().map(|v| self.lift_element(v)).collect();
        let lifted = Subgroup::from_generators(self.isotropic.module(), &gens);
        Ok(lifted.join(&self.isotropic))
    }
}
