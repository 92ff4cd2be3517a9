//! Element-level oracles that share nothing with the lattice code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use isotropic_core::{EnumerationBudget, SymplecticModule};

pub type ElementSet = BTreeSet<Vec<u64>>;

pub fn module(d: &[u64]) -> Arc<SymplecticModule> {
    Arc::new(SymplecticModule::from_divisors(d).unwrap())
}

pub fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

/// Plain coordinate model of `K(d)`: add mod moduli, pair via the explicit
/// formula with the common denominator `d_g`.
pub struct Naive {
    pub d: Vec<u64>,
}

impl Naive {
    pub fn g(&self) -> usize {
        self.d.len()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.d.iter().chain(&self.d).copied().collect()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for m in self.moduli() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(self.moduli()).map(|((a, b), m)| (a + b) % m).collect()
    }

    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let g = self.g();
        let big = *self.d.last().unwrap() as i128;
        let mut s: i128 = 0;
        for i in 0..g {
            let w = big / self.d[i] as i128;
            s += w * (x[i] as i128 * y[g + i] as i128 - x[g + i] as i128 * y[i] as i128);
        }
        s.rem_euclid(big) as u64
    }

    pub fn closure(&self, gens: &[Vec<u64>]) -> ElementSet {
        let zero = vec![0; 2 * self.g()];
        let mut set: ElementSet = [zero.clone()].into();
        let mut frontier = vec![zero];
        while let Some(s) = frontier.pop() {
            for x in gens {
                let t = self.add(&s, x);
                if set.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        set
    }

    /// All isotropic subgroups, grown one element at a time.
    pub fn isotropic_subgroups(&self) -> HashSet<ElementSet> {
        let elements = self.elements();
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut level = vec![self.closure(&[])];
        seen.insert(level[0].clone());
        while !level.is_empty() {
            let mut next = Vec::new();
            for h in &level {
                for x in &elements {
                    if h.contains(x) || h.iter().any(|y| self.pair(x, y) != 0) {
                        continue;
                    }
                    let mut gens: Vec<Vec<u64>> = h.iter().cloned().collect();
                    gens.push(x.clone());
                    let bigger = self.closure(&gens);
                    if seen.insert(bigger.clone()) {
                        next.push(bigger);
                    }
                }
            }
            level = next;
        }
        seen
    }

    pub fn maximal_isotropic(&self) -> HashSet<ElementSet> {
        let all = self.isotropic_subgroups();
        all.iter()
            .filter(|h| !all.iter().any(|k| k.len() > h.len() && h.is_subset(k)))
            .cloned()
            .collect()
    }
}

pub fn element_set(h: &isotropic_core::Subgroup) -> ElementSet {
    h.elements().into_iter().map(|v| v.coords().to_vec()).collect()
}
