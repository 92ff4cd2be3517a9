mod common;

use std::sync::Arc;

use common::{budget, module};
use isotropic_core::enumeration::enumerate_subgroups;
use isotropic_core::{ModuleVector, Subgroup, SymplecticModule};
use proptest::prelude::*;

fn chain() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=4, 1..=3).prop_map(|steps| {
        let mut d = 1;
        steps.into_iter().map(|s| { d *= s; d }).collect()
    })
}

fn module_and_vectors(n: usize) -> impl Strategy<Value = (Arc<SymplecticModule>, Vec<ModuleVector>)> {
    chain().prop_flat_map(move |d| {
        let k = module(&d);
        let coords: Vec<_> = k.moduli().iter().map(|&m| 0..m).collect();
        let k2 = Arc::clone(&k);
        prop::collection::vec(coords, n)
            .prop_map(move |vs| (Arc::clone(&k2), vs.into_iter().map(|c| k2.vector(c).unwrap()).collect()))
    })
}

proptest! {
    #[test]
    fn pairing_is_bilinear((k, v) in module_and_vectors(3), a in 0u64..50) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let lhs = k.pairing(&k.add(x, y), z);
        let (p, q) = (k.pairing(x, z), k.pairing(y, z));
        let den = k.pairing_denominator();
        prop_assert_eq!(lhs.numerator, (p.numerator + q.numerator) % den);
        prop_assert_eq!(k.pairing(&k.scale(a, x), y).numerator, a * k.pairing(x, y).numerator % den);
    }

    #[test]
    fn pairing_is_alternating((k, v) in module_and_vectors(2)) {
        prop_assert!(k.pairing(&v[0], &v[0]).is_zero());
        let (xy, yx) = (k.pairing(&v[0], &v[1]), k.pairing(&v[1], &v[0]));
        prop_assert_eq!((xy.numerator + yx.numerator) % k.pairing_denominator(), 0);
    }

    #[test]
    fn canonical_form_is_idempotent((k, v) in module_and_vectors(3)) {
        let h = Subgroup::from_generators(&k, &v);
        let again = Subgroup::from_generators(&k, &h.generators());
        prop_assert_eq!(h.basis(), again.basis());
        let mut shuffled = v.clone();
        shuffled.reverse();
        shuffled.push(k.add(&v[0], &v[1]));
        let reshuffled = Subgroup::from_generators(&k, &shuffled);
        prop_assert_eq!(h.basis(), reshuffled.basis());
    }

    #[test]
    fn invariants_form_a_divisor_chain((k, v) in module_and_vectors(3)) {
        let h = Subgroup::from_generators(&k, &v);
        let inv = h.abelian_invariants();
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(inv.iter().all(|&f| f > 1));
        prop_assert_eq!(inv.iter().map(|&f| f as u128).product::<u128>(), h.order());
    }
}

#[test]
fn pairing_is_nondegenerate() {
    for d in [&[2u64][..], &[1, 4], &[2, 4], &[3, 3], &[1, 2, 2]] {
        let k = module(d);
        let all: Vec<_> = k.elements().collect();
        for x in all.iter().filter(|x| **x != k.zero()) {
            assert!(all.iter().any(|y| !k.pairing(x, y).is_zero()), "{x:?} in K{d:?}");
        }
    }
}

/// Modules of order at most 2^12 whose full subgroup lattices are tractable.
const CURATED: &[&[u64]] = &[
    &[2], &[3], &[4], &[8], &[9], &[12], &[1, 2], &[2, 2], &[1, 4], &[2, 4], &[1, 6], &[3, 3],
    &[1, 8], &[4, 4], &[2, 6], &[1, 2, 2], &[2, 2, 2], &[1, 1, 4], &[1, 12], &[5, 5],
    &[8, 8], &[6, 6], &[2, 2, 4], &[2, 2, 2, 2], &[7, 7],
];

#[test]
fn complement_order_and_maximality_over_all_subgroups() {
    for d in CURATED {
        let k = module(d);
        assert!(k.order() <= 1 << 12);
        let subgroups = enumerate_subgroups(&k, None, &budget()).unwrap();
        for h in &subgroups {
            let perp = h.orthogonal_complement();
            assert_eq!(h.order() * perp.order(), k.order(), "{h} in K{d:?}");
            assert_eq!(h.is_maximal_isotropic(), *h == perp, "{h} in K{d:?}");
            assert_eq!(perp.orthogonal_complement(), *h, "{h} in K{d:?}");
        }
    }
}

#[test]
fn canonical_basis_is_bit_identical_across_generating_sets() {
    let k = module(&[2, 4]);
    for h in enumerate_subgroups(&k, None, &budget()).unwrap() {
        let from_elements = Subgroup::from_generators(&k, &h.elements());
        assert_eq!(from_elements.basis(), h.basis());
    }
}
