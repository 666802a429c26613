use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::algebra::Gpea;
use crate::riesz::{self, DecompositionTable, RieszProperty};

/// The base algebra `E` of a kite: a GPEA with computable sums, order and
/// differences. Finite tables and the lazy natural-number chain implement it.
pub trait KiteBase {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;

    fn contains(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// The `d` with `d + a = b`.
    fn left_diff(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;

    /// The `c` with `a + c = b`.
    fn right_diff(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.right_diff(a, b).is_some()
    }

    fn is_total(&self) -> bool;

    fn is_weakly_commutative(&self) -> bool;

    /// `n·a` exists for every `n ≥ 1`.
    fn is_infinitesimal(&self, a: &Self::Elem) -> bool;

    fn format(&self, a: &Self::Elem) -> String;
}

/// Bases with a computable upper bound and Riesz decomposition witnesses.
pub trait RieszBase: KiteBase {
    fn upper_bound(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// A table for `a1 + a2 = b1 + b2` meeting `property`, if one exists.
    fn decompose(
        &self,
        a: [&Self::Elem; 2],
        b: [&Self::Elem; 2],
        property: RieszProperty,
    ) -> Option<DecompositionTable<Self::Elem>>;
}

/// Bases that can produce random elements, for sampled checks.
pub trait SampleBase: KiteBase {
    /// A random element; `bound` caps the size of numeric elements.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;
}

/// The positive cone of the integers: `ℕ` with total `+`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NatChain;

impl KiteBase for NatChain {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn contains(&self, _: &u64) -> bool {
        true
    }

    fn add(&self, a: &u64, b: &u64) -> Option<u64> {
        a.checked_add(*b)
    }

    fn left_diff(&self, b: &u64, a: &u64) -> Option<u64> {
        b.checked_sub(*a)
    }

    fn right_diff(&self, a: &u64, b: &u64) -> Option<u64> {
        b.checked_sub(*a)
    }

    fn leq(&self, a: &u64, b: &u64) -> bool {
        a <= b
    }

    fn is_total(&self) -> bool {
        true
    }

    fn is_weakly_commutative(&self) -> bool {
        true
    }

    fn is_infinitesimal(&self, _: &u64) -> bool {
        true
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl RieszBase for NatChain {
    fn upper_bound(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(*a.max(b))
    }

    fn decompose(&self, a: [&u64; 2], b: [&u64; 2], _: RieszProperty) -> Option<DecompositionTable<u64>> {
        let ([a1, a2], [b1, b2]) = (a, b);
        if a1.checked_add(*a2)? != b1.checked_add(*b2)? {
            return None;
        }
        // the meet-based table; c12 ∧ c21 = 0 so it serves every level
        let c11 = *a1.min(b1);
        let c12 = a1 - c11;
        let c21 = b1 - c11;
        let c22 = a2.checked_sub(c21)?;
        Some(DecompositionTable { c11, c12, c21, c22 })
    }
}

impl SampleBase for NatChain {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> u64 {
        rng.gen_range(0..=bound)
    }
}

impl KiteBase for Gpea {
    type Elem = usize;

    fn zero(&self) -> usize {
        Gpea::zero(self)
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.size()
    }

    fn add(&self, a: &usize, b: &usize) -> Option<usize> {
        Gpea::add(self, *a, *b)
    }

    fn left_diff(&self, b: &usize, a: &usize) -> Option<usize> {
        self.left_diff_opt(*b, *a)
    }

    fn right_diff(&self, a: &usize, b: &usize) -> Option<usize> {
        self.right_diff_opt(*a, *b)
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        Gpea::leq(self, *a, *b)
    }

    fn is_total(&self) -> bool {
        Gpea::is_total(self)
    }

    fn is_weakly_commutative(&self) -> bool {
        Gpea::is_weakly_commutative(self)
    }

    fn is_infinitesimal(&self, a: &usize) -> bool {
        // n·a strictly increases unless a = 0, so a cycle means a = 0
        let mut seen = vec![false; self.size()];
        let mut cur = *a;
        loop {
            if std::mem::replace(&mut seen[cur], true) {
                return true;
            }
            match Gpea::add(self, cur, *a) {
                Some(next) => cur = next,
                None => return false,
            }
        }
    }

    fn format(&self, a: &usize) -> String {
        self.label(*a)
    }
}

impl RieszBase for Gpea {
    fn upper_bound(&self, a: &usize, b: &usize) -> Option<usize> {
        let up = self.order().up_set(*a).intersection(self.order().up_set(*b));
        let candidates: Vec<usize> = up.collect();
        // least upper bound when one exists, else the first in index order
        candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&d| Gpea::leq(self, c, d)))
            .or_else(|| candidates.first().copied())
    }

    fn decompose(&self, a: [&usize; 2], b: [&usize; 2], property: RieszProperty) -> Option<DecompositionTable<usize>> {
        riesz::find_table(self, [*a[0], *a[1]], [*b[0], *b[1]], property)
    }
}

impl SampleBase for Gpea {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _: u64) -> usize {
        rng.gen_range(0..self.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    #[test]
    fn nat_differences() {
        assert_eq!(NatChain.left_diff(&5, &3), Some(2));
        assert_eq!(NatChain.right_diff(&5, &3), None);
        let t = NatChain.decompose([&1, &2], [&2, &1], RieszProperty::Rdp).unwrap();
        assert_eq!((t.c11, t.c12, t.c21, t.c22), (1, 0, 1, 1));
    }

    #[test]
    fn finite_infinitesimals() {
        let c = chain(4);
        assert!(KiteBase::is_infinitesimal(&c, &0));
        assert!(!KiteBase::is_infinitesimal(&c, &1));
    }

    #[test]
    fn finite_upper_bound_is_least() {
        let c = chain(5);
        assert_eq!(c.upper_bound(&1, &3), Some(3));
        assert_eq!(antichain3().upper_bound(&1, &2), None);
    }
}
