use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("image {0:?} is not a bijection of 0..{1}")]
    NotBijection(Vec<usize>, usize),
    #[error("cycle list is not a set of disjoint cycles on 0..{0}")]
    BadCycles(usize),
    #[error("permutations act on index sets of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
}

/// A bijection of `0..n`. `image[j]` holds the image of `j`; the inverse is
/// computed once at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermutationError> {
        let n = image.len();
        let mut inverse = vec![usize::MAX; n];
        for (j, &i) in image.iter().enumerate() {
            if i >= n || inverse[i] != usize::MAX {
                return Err(PermutationError::NotBijection(image, n));
            }
            inverse[i] = j;
        }
        Ok(Permutation { image, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// `i ↦ i - 1 (mod n)`.
    pub fn cycle_down(n: usize) -> Self {
        Self::shift(n, -1)
    }

    /// `i ↦ i + k (mod n)`.
    pub fn shift(n: usize, k: i64) -> Self {
        if n == 0 {
            return Self::identity(0);
        }
        let m = n as i64;
        let image = (0..n).map(|i| (i as i64 + k).rem_euclid(m) as usize).collect();
        Self::from_image(image).expect("shift is a bijection")
    }

    /// Builds from disjoint cycles; `(a b c)` sends `a ↦ b ↦ c ↦ a`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermutationError> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || std::mem::replace(&mut touched[a], true) {
                    return Err(PermutationError::BadCycles(n));
                }
                image[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_image(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    #[inline]
    pub fn apply_inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            image: self.inverse.clone(),
            inverse: self.image.clone(),
        }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.len() != other.len() {
            return Err(PermutationError::SizeMismatch(self.len(), other.len()));
        }
        Ok(Self::from_image(other.image.iter().map(|&x| self.image[x]).collect())
            .expect("composition of bijections"))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// Orbits listed from their least element, following the map forward.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.image[x];
            }
            out.push(orbit);
        }
        out
    }

    /// Every permutation of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n)
            .permutations(n)
            .map(|p| Permutation::from_image(p).expect("permutation"))
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.image.iter().join(" "))
    }
}

/// Index set of a kite: finite `0..n` or the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Finite(usize),
    Integers,
}

impl IndexSet {
    pub fn contains(&self, i: i64) -> bool {
        match *self {
            IndexSet::Finite(n) => i >= 0 && (i as usize) < n,
            IndexSet::Integers => true,
        }
    }
}

/// A bijection of a kite index set. Finite sets carry a [`Permutation`];
/// the integers carry a computable invertible rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexRule {
    Finite(Permutation),
    /// `i ↦ i + k` on the integers.
    Shift(i64),
    /// A finitely supported permutation of the integers.
    Cycles {
        forward: BTreeMap<i64, i64>,
        backward: BTreeMap<i64, i64>,
    },
}

impl IndexRule {
    pub fn identity_on_integers() -> Self {
        IndexRule::Shift(0)
    }

    pub fn integer_cycles(cycles: &[Vec<i64>]) -> Result<Self, PermutationError> {
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if forward.insert(a, b).is_some() || backward.insert(b, a).is_some() {
                    return Err(PermutationError::BadCycles(0));
                }
            }
        }
        forward.retain(|a, b| a != b);
        backward.retain(|a, b| a != b);
        Ok(IndexRule::Cycles { forward, backward })
    }

    #[inline]
    pub fn apply(&self, i: i64) -> i64 {
        match self {
            IndexRule::Finite(p) => p.apply(i as usize) as i64,
            IndexRule::Shift(k) => i + k,
            IndexRule::Cycles { forward, .. } => *forward.get(&i).unwrap_or(&i),
        }
    }

    #[inline]
    pub fn apply_inverse(&self, i: i64) -> i64 {
        match self {
            IndexRule::Finite(p) => p.apply_inverse(i as usize) as i64,
            IndexRule::Shift(k) => i - k,
            IndexRule::Cycles { backward, .. } => *backward.get(&i).unwrap_or(&i),
        }
    }

    pub fn acts_on(&self, index: IndexSet) -> bool {
        matches!(
            (self, index),
            (IndexRule::Finite(_), IndexSet::Finite(_))
                | (IndexRule::Shift(_), IndexSet::Integers)
                | (IndexRule::Cycles { .. }, IndexSet::Integers)
        ) && match (self, index) {
            (IndexRule::Finite(p), IndexSet::Finite(n)) => p.len() == n,
            _ => true,
        }
    }

    /// Equality as functions on the index set.
    pub fn same_function(&self, other: &IndexRule) -> bool {
        use IndexRule::*;
        match (self, other) {
            (Finite(p), Finite(q)) => p == q,
            (Shift(a), Shift(b)) => a == b,
            (Cycles { forward, .. }, Shift(0)) | (Shift(0), Cycles { forward, .. }) => forward.is_empty(),
            (Cycles { forward: f, .. }, Cycles { forward: g, .. }) => f == g,
            _ => false,
        }
    }

    pub fn as_permutation(&self) -> Option<&Permutation> {
        match self {
            IndexRule::Finite(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for IndexRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexRule::Finite(p) => write!(f, "{p}"),
            IndexRule::Shift(0) => f.write_str("id"),
            IndexRule::Shift(k) => write!(f, "i{k:+}"),
            IndexRule::Cycles { forward, .. } => {
                write!(f, "cycles{{{}}}", forward.iter().map(|(a, b)| format!("{a}->{b}")).join(","))
            }
        }
    }
}
