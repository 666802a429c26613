#![allow(dead_code)]

use std::collections::BTreeSet;

use kitelab::algebra::catalog;
use kitelab::{Gpea, PartialTable, Pea};
use proptest::prelude::*;

/// A down-closed subset of `ℕ^k`, listed with the origin first.
#[derive(Clone, Debug)]
pub struct Downset {
    pub points: Vec<Vec<usize>>,
}

impl Downset {
    pub fn from_generators(generators: &[Vec<usize>]) -> Self {
        let mut set = BTreeSet::new();
        for g in generators {
            let mut stack = vec![g.clone()];
            while let Some(p) = stack.pop() {
                if !set.insert(p.clone()) {
                    continue;
                }
                for i in 0..p.len() {
                    if p[i] > 0 {
                        let mut q = p.clone();
                        q[i] -= 1;
                        stack.push(q);
                    }
                }
            }
        }
        Downset { points: set.into_iter().collect() }
    }

    /// Addition restricted to the set: commutative, so a GPEA.
    pub fn gpea(&self) -> Gpea {
        let index = |p: &[usize]| self.points.iter().position(|q| q == p);
        let t = PartialTable::from_fn(self.points.len(), |a, b| {
            let s: Vec<usize> = self.points[a].iter().zip(&self.points[b]).map(|(x, y)| x + y).collect();
            index(&s)
        })
        .unwrap();
        Gpea::new(t, 0).unwrap()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.points[a].iter().zip(&self.points[b]).all(|(x, y)| x <= y)
    }
}

/// Down-sets in `ℕ` or `ℕ²` with at most `max` points.
pub fn downset(max: usize) -> impl Strategy<Value = Downset> {
    (1usize..=2)
        .prop_flat_map(|k| prop::collection::vec(prop::collection::vec(0usize..4, k), 1..4))
        .prop_map(|gens| Downset::from_generators(&gens))
        .prop_filter("carrier too large", move |d| d.points.len() <= max)
}

/// Small named bases for kites.
pub fn named_bases() -> Vec<(&'static str, Gpea)> {
    vec![
        ("C1", catalog::chain(1)),
        ("C2", catalog::chain(2)),
        ("C3", catalog::chain(3)),
        ("2x2", catalog::boolean4().into_gpea()),
        ("MO2", catalog::mo2().into_gpea()),
        ("antichain", catalog::antichain3()),
    ]
}

pub fn named_peas() -> Vec<(&'static str, Pea)> {
    vec![
        ("C2", catalog::chain_pea(2)),
        ("C4", catalog::chain_pea(4)),
        ("2x2", catalog::boolean4()),
        ("MO2", catalog::mo2()),
        ("C2xC3", catalog::product_pea(&catalog::chain_pea(2), &catalog::chain_pea(3))),
    ]
}
