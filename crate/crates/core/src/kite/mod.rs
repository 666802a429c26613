//! The kite pseudo effect algebra `K_I^{λ,ρ}(E)`.
//!
//! Elements are `LOWER` tuples over `E` and `UPPER` tuples over a barred
//! copy of `E`, indexed by `I`. [`Kite`] evaluates rules (I)–(IV) on demand
//! over any [`KiteBase`]; [`ExplicitKite`] materializes the full table for a
//! finite base and finite `I`.

mod base;
mod explicit;
mod perfect;
mod perm;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rand::Rng;
use thiserror::Error;

use crate::algebra::AlgebraError;

pub use base::{KiteBase, NatChain, RieszBase, SampleBase};
pub use explicit::{unitization, ExplicitKite};
pub use perfect::{check_perfect, infinitesimals, PerfectPartition};
pub use perm::{IndexRule, IndexSet, Permutation, PermutationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KiteError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("index rule {0} does not act on the index set")]
    IndexRule(String),
    #[error("base is not λ,ρ-weakly commutative: {0}")]
    NotWeaklyCommutative(&'static str),
    #[error("element {0} does not belong to this kite")]
    NotMember(String),
    #[error("explicit carrier of {carrier} elements exceeds the cap of {cap}")]
    BudgetExceeded { carrier: String, cap: usize },
    #[error("only finite kites over finite bases can be materialized")]
    NotFinite,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `LOWER` tuples live in `E^I`, `UPPER` tuples in the barred copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Lower,
    Upper,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Lower => "L",
            Sort::Upper => "U",
        })
    }
}

/// A kite element. Coordinates equal to the base zero are not stored, so
/// equal elements have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KiteElement<T> {
    sort: Sort,
    coords: BTreeMap<i64, T>,
}

impl<T> KiteElement<T> {
    pub fn sort(&self) -> Sort {
        self.sort
    }

    pub fn is_lower(&self) -> bool {
        self.sort == Sort::Lower
    }

    pub fn is_upper(&self) -> bool {
        self.sort == Sort::Upper
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> &BTreeMap<i64, T> {
        &self.coords
    }
}

/// `K_I^{λ,ρ}(E)` over a base `B`, evaluated lazily.
#[derive(Clone, Debug)]
pub struct Kite<B: KiteBase> {
    base: B,
    index: IndexSet,
    lambda: IndexRule,
    rho: IndexRule,
}

/// Outcome of a sampled or exhaustive probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe<T> {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<T>,
}

impl<T> Probe<T> {
    fn pass(checked: usize) -> Self {
        Probe { holds: true, checked, witness: None }
    }

    fn fail(checked: usize, witness: T) -> Self {
        Probe { holds: false, checked, witness: Some(witness) }
    }
}

/// `λ,ρ`-weak commutativity: weak commutativity when the maps agree,
/// totality otherwise.
pub fn is_lr_weakly_commutative<B: KiteBase>(base: &B, lambda: &IndexRule, rho: &IndexRule) -> bool {
    if lambda.same_function(rho) {
        base.is_weakly_commutative()
    } else {
        base.is_total()
    }
}

impl<B: KiteBase> Kite<B> {
    /// A kite over the finite index set `0..n`, `n = lambda.len()`.
    pub fn new(base: B, lambda: Permutation, rho: Permutation) -> Result<Self, KiteError> {
        if lambda.len() != rho.len() {
            return Err(PermutationError::SizeMismatch(lambda.len(), rho.len()).into());
        }
        let index = IndexSet::Finite(lambda.len());
        Self::with_rules(base, index, IndexRule::Finite(lambda), IndexRule::Finite(rho))
    }

    /// A kite over `I = ℤ` with computable index rules.
    pub fn over_integers(base: B, lambda: IndexRule, rho: IndexRule) -> Result<Self, KiteError> {
        Self::with_rules(base, IndexSet::Integers, lambda, rho)
    }

    fn with_rules(base: B, index: IndexSet, lambda: IndexRule, rho: IndexRule) -> Result<Self, KiteError> {
        for rule in [&lambda, &rho] {
            if !rule.acts_on(index) {
                return Err(KiteError::IndexRule(rule.to_string()));
            }
        }
        if !is_lr_weakly_commutative(&base, &lambda, &rho) {
            let why = if lambda.same_function(&rho) {
                "λ = ρ and the base is not weakly commutative"
            } else {
                "λ ≠ ρ and the base addition is not total"
            };
            return Err(KiteError::NotWeaklyCommutative(why));
        }
        Ok(Kite { base, index, lambda, rho })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn index(&self) -> IndexSet {
        self.index
    }

    pub fn lambda(&self) -> &IndexRule {
        &self.lambda
    }

    pub fn rho(&self) -> &IndexRule {
        &self.rho
    }

    pub fn is_symmetric_by_rule(&self) -> bool {
        self.lambda.same_function(&self.rho)
    }

    /// Builds an element from `(index, value)` pairs; unlisted coordinates
    /// are zero.
    pub fn element<I>(&self, sort: Sort, coords: I) -> Result<KiteElement<B::Elem>, KiteError>
    where
        I: IntoIterator<Item = (i64, B::Elem)>,
    {
        let zero = self.base.zero();
        let mut map = BTreeMap::new();
        for (i, v) in coords {
            if !self.index.contains(i) || !self.base.contains(&v) {
                return Err(KiteError::NotMember(format!("{sort} coordinate {i} = {v:?}")));
            }
            if v != zero {
                map.insert(i, v);
            } else {
                map.remove(&i);
            }
        }
        Ok(KiteElement { sort, coords: map })
    }

    /// Dense constructor for finite index sets: position `j` holds coordinate `j`.
    pub fn dense(&self, sort: Sort, coords: Vec<B::Elem>) -> Result<KiteElement<B::Elem>, KiteError> {
        if let IndexSet::Finite(n) = self.index {
            if coords.len() != n {
                return Err(KiteError::NotMember(format!("{sort} tuple of length {}", coords.len())));
            }
        }
        self.element(sort, coords.into_iter().enumerate().map(|(j, v)| (j as i64, v)))
    }

    pub fn lower(&self, coords: Vec<B::Elem>) -> Result<KiteElement<B::Elem>, KiteError> {
        self.dense(Sort::Lower, coords)
    }

    pub fn upper(&self, coords: Vec<B::Elem>) -> Result<KiteElement<B::Elem>, KiteError> {
        self.dense(Sort::Upper, coords)
    }

    pub fn zero(&self) -> KiteElement<B::Elem> {
        KiteElement { sort: Sort::Lower, coords: BTreeMap::new() }
    }

    pub fn one(&self) -> KiteElement<B::Elem> {
        KiteElement { sort: Sort::Upper, coords: BTreeMap::new() }
    }

    pub fn coord(&self, x: &KiteElement<B::Elem>, i: i64) -> B::Elem {
        x.coords.get(&i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// All coordinates in index order (finite index sets only).
    pub fn coords(&self, x: &KiteElement<B::Elem>) -> Option<Vec<B::Elem>> {
        match self.index {
            IndexSet::Finite(n) => Some((0..n as i64).map(|i| self.coord(x, i)).collect()),
            IndexSet::Integers => None,
        }
    }

    pub fn contains(&self, x: &KiteElement<B::Elem>) -> bool {
        let zero = self.base.zero();
        x.coords
            .iter()
            .all(|(&i, v)| self.index.contains(i) && self.base.contains(v) && *v != zero)
    }

    fn check(&self, x: &KiteElement<B::Elem>) -> Result<(), KiteError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(KiteError::NotMember(self.format(x)))
        }
    }

    fn build<F>(&self, sort: Sort, keys: BTreeSet<i64>, mut f: F) -> Option<KiteElement<B::Elem>>
    where
        F: FnMut(i64) -> Option<B::Elem>,
    {
        let zero = self.base.zero();
        let mut coords = BTreeMap::new();
        for i in keys {
            let v = f(i)?;
            if v != zero {
                coords.insert(i, v);
            }
        }
        Some(KiteElement { sort, coords })
    }

    /// `x + y` by rules (I)–(IV); `Ok(None)` when undefined.
    pub fn add(
        &self,
        x: &KiteElement<B::Elem>,
        y: &KiteElement<B::Elem>,
    ) -> Result<Option<KiteElement<B::Elem>>, KiteError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(
        &self,
        x: &KiteElement<B::Elem>,
        y: &KiteElement<B::Elem>,
    ) -> Option<KiteElement<B::Elem>> {
        let b = &self.base;
        match (x.sort, y.sort) {
            (Sort::Upper, Sort::Upper) => None,
            (Sort::Upper, Sort::Lower) => {
                // (II): coordinate i is f_{ρ⁻¹(i)} \ a_i
                let keys = x.coords.keys().copied().chain(y.coords.keys().map(|&j| self.rho.apply(j))).collect();
                self.build(Sort::Upper, keys, |i| {
                    b.right_diff(&self.coord(y, self.rho.apply_inverse(i)), &self.coord(x, i))
                })
            }
            (Sort::Lower, Sort::Upper) => {
                // (III): coordinate i is a_i / f_{λ⁻¹(i)}
                let keys = y.coords.keys().copied().chain(x.coords.keys().map(|&j| self.lambda.apply(j))).collect();
                self.build(Sort::Upper, keys, |i| {
                    b.left_diff(&self.coord(y, i), &self.coord(x, self.lambda.apply_inverse(i)))
                })
            }
            (Sort::Lower, Sort::Lower) => {
                let keys = x.coords.keys().chain(y.coords.keys()).copied().collect();
                self.build(Sort::Lower, keys, |j| b.add(&self.coord(x, j), &self.coord(y, j)))
            }
        }
    }

    /// `(x⁻, x~)` by the closed forms.
    pub fn negations(&self, x: &KiteElement<B::Elem>) -> (KiteElement<B::Elem>, KiteElement<B::Elem>) {
        let relabel = |sort: Sort, f: &dyn Fn(i64) -> i64| KiteElement {
            sort,
            coords: x.coords.iter().map(|(&k, v)| (f(k), v.clone())).collect(),
        };
        match x.sort {
            // U⟨a⟩⁻ = L⟨a_{λ(j)}⟩, U⟨a⟩~ = L⟨a_{ρ(j)}⟩: coordinate i lands at the preimage
            Sort::Upper => (
                relabel(Sort::Lower, &|i| self.lambda.apply_inverse(i)),
                relabel(Sort::Lower, &|i| self.rho.apply_inverse(i)),
            ),
            // L⟨f⟩⁻ = U⟨f_{ρ⁻¹(i)}⟩, L⟨f⟩~ = U⟨f_{λ⁻¹(i)}⟩
            Sort::Lower => (
                relabel(Sort::Upper, &|j| self.rho.apply(j)),
                relabel(Sort::Upper, &|j| self.lambda.apply(j)),
            ),
        }
    }

    /// The order of the kite, decided coordinatewise.
    pub fn leq(&self, x: &KiteElement<B::Elem>, y: &KiteElement<B::Elem>) -> bool {
        let b = &self.base;
        match (x.sort, y.sort) {
            (Sort::Lower, Sort::Lower) => x
                .coords
                .keys()
                .chain(y.coords.keys())
                .all(|&j| b.leq(&self.coord(x, j), &self.coord(y, j))),
            (Sort::Upper, Sort::Upper) => x
                .coords
                .keys()
                .chain(y.coords.keys())
                .all(|&i| b.leq(&self.coord(y, i), &self.coord(x, i))),
            (Sort::Lower, Sort::Upper) => y
                .coords
                .keys()
                .copied()
                .chain(x.coords.keys().map(|&j| self.lambda.apply(j)))
                .all(|i| b.add(&self.coord(y, i), &self.coord(x, self.lambda.apply_inverse(i))).is_some()),
            (Sort::Upper, Sort::Lower) => false,
        }
    }

    /// Lower elements with infinitesimal coordinates; upper elements never.
    pub fn is_infinitesimal(&self, x: &KiteElement<B::Elem>) -> bool {
        x.is_lower() && x.coords.values().all(|v| self.base.is_infinitesimal(v))
    }

    pub fn format(&self, x: &KiteElement<B::Elem>) -> String {
        match self.coords(x) {
            Some(dense) => format!("{}({})", x.sort, dense.iter().map(|v| self.base.format(v)).join(",")),
            None => format!(
                "{}{{{}}}",
                x.sort,
                x.coords.iter().map(|(i, v)| format!("{i}:{}", self.base.format(v))).join(",")
            ),
        }
    }
}

/// Coordinates sampled for lazy kites over `ℤ` fall in `-WINDOW..=WINDOW`.
const WINDOW: i64 = 4;

impl<B: SampleBase> Kite<B> {
    /// A random element of the given sort with base coordinates up to `bound`.
    pub fn sample_element<R: Rng + ?Sized>(&self, rng: &mut R, sort: Sort, bound: u64) -> KiteElement<B::Elem> {
        let zero = self.base.zero();
        let keys: Vec<i64> = match self.index {
            IndexSet::Finite(n) => (0..n as i64).collect(),
            IndexSet::Integers => (-WINDOW..=WINDOW).filter(|_| rng.gen_bool(0.5)).collect(),
        };
        let coords = keys
            .into_iter()
            .map(|i| (i, self.base.sample(rng, bound)))
            .filter(|(_, v)| *v != zero)
            .collect();
        KiteElement { sort, coords }
    }

    pub fn sample_any<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> KiteElement<B::Elem> {
        let sort = if rng.gen_bool(0.5) { Sort::Lower } else { Sort::Upper };
        self.sample_element(rng, sort, bound)
    }

    /// Indices probed deterministically before random sampling.
    fn probe_indices(&self) -> Vec<i64> {
        match self.index {
            IndexSet::Finite(n) => (0..n as i64).collect(),
            IndexSet::Integers => (-WINDOW..=WINDOW).collect(),
        }
    }

    fn nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<B::Elem> {
        let zero = self.base.zero();
        (0..256).map(|_| self.base.sample(rng, 1)).find(|v| *v != zero)
    }

    /// `x⁻ = x~` on unit-vector probes and `samples` random elements.
    pub fn symmetry_probe<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        samples: usize,
        bound: u64,
    ) -> Probe<KiteElement<B::Elem>> {
        let mut candidates = Vec::new();
        if let Some(v) = self.nonzero(rng) {
            for i in self.probe_indices() {
                for sort in [Sort::Lower, Sort::Upper] {
                    candidates.push(KiteElement { sort, coords: BTreeMap::from([(i, v.clone())]) });
                }
            }
        }
        for _ in 0..samples {
            candidates.push(self.sample_any(rng, bound));
        }
        for (k, x) in candidates.iter().enumerate() {
            let (minus, tilde) = self.negations(x);
            if minus != tilde {
                return Probe::fail(k + 1, x.clone());
            }
        }
        Probe::pass(candidates.len())
    }

    /// Draws defined sums `x + y` until `wanted` are found or attempts run out.
    pub fn sample_defined_sums<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        wanted: usize,
        bound: u64,
    ) -> Vec<(KiteElement<B::Elem>, KiteElement<B::Elem>, KiteElement<B::Elem>)> {
        let mut out = Vec::with_capacity(wanted);
        let mut attempts = 0;
        while out.len() < wanted && attempts < wanted * 64 {
            attempts += 1;
            let x = self.sample_any(rng, bound);
            let y = self.sample_any(rng, bound);
            if let Some(s) = self.add_unchecked(&x, &y) {
                out.push((x, y, s));
            }
        }
        out
    }

    /// Sampled check that `(LOWER, UPPER)` satisfies (a)–(c) of a perfect
    /// PEA and that `LOWER` is exactly the infinitesimal part.
    pub fn perfect_probe<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize, bound: u64) -> Probe<String> {
        let class = |x: &KiteElement<B::Elem>| usize::from(x.is_upper());
        let mut checked = 0;
        for _ in 0..samples {
            let x = self.sample_any(rng, bound);
            let (minus, tilde) = self.negations(&x);
            checked += 1;
            if class(&minus) != 1 - class(&x) || class(&tilde) != 1 - class(&x) {
                return Probe::fail(checked, format!("(a) fails at {}", self.format(&x)));
            }
            if self.is_infinitesimal(&x) != x.is_lower() {
                return Probe::fail(checked, format!("infinitesimal part differs at {}", self.format(&x)));
            }
            let f = self.sample_element(rng, Sort::Lower, bound);
            let g = self.sample_element(rng, Sort::Lower, bound);
            if self.add_unchecked(&f, &g).is_none() {
                return Probe::fail(checked, format!("(c) fails at {} + {}", self.format(&f), self.format(&g)));
            }
        }
        for (x, y, s) in self.sample_defined_sums(rng, samples, bound) {
            checked += 1;
            let (i, j) = (class(&x), class(&y));
            if i + j > 1 || class(&s) != i + j {
                return Probe::fail(checked, format!("(b) fails at {} + {}", self.format(&x), self.format(&y)));
            }
        }
        Probe::pass(checked)
    }

    /// Sampled additivity of the two-valued map `LOWER ↦ 0`, `UPPER ↦ 1`.
    pub fn designated_state_probe<R: Rng + ?Sized>(&self, rng: &mut R, sums: usize, bound: u64) -> Probe<String> {
        let s = |x: &KiteElement<B::Elem>| u32::from(x.is_upper());
        if s(&self.one()) != 1 {
            return Probe::fail(0, "s(1) ≠ 1".into());
        }
        let drawn = self.sample_defined_sums(rng, sums, bound);
        for (k, (x, y, z)) in drawn.iter().enumerate() {
            if s(z) != s(x) + s(y) {
                return Probe::fail(k + 1, format!("{} + {}", self.format(x), self.format(y)));
            }
        }
        Probe { holds: drawn.len() >= sums, checked: drawn.len(), witness: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    fn nat(n: usize, rho: Permutation) -> Kite<NatChain> {
        Kite::new(NatChain, Permutation::identity(n), rho).unwrap()
    }

    #[test]
    fn rule_two_on_nat() {
        let k = nat(2, Permutation::cycle_down(2));
        let x = k.upper(vec![2, 3]).unwrap();
        let y = k.lower(vec![1, 1]).unwrap();
        assert_eq!(k.add(&x, &y).unwrap(), Some(k.upper(vec![1, 2]).unwrap()));
        assert_eq!(k.add(&x, &x).unwrap(), None);
    }

    #[test]
    fn negation_of_lower_on_nat() {
        let k = nat(2, Permutation::cycle_down(2));
        let x = k.lower(vec![1, 2]).unwrap();
        let (minus, tilde) = k.negations(&x);
        assert_eq!(minus, k.upper(vec![2, 1]).unwrap());
        assert_eq!(k.add(&minus, &x).unwrap(), Some(k.one()));
        assert_eq!(k.add(&x, &tilde).unwrap(), Some(k.one()));
    }

    #[test]
    fn weak_commutativity_gate() {
        let swap = Permutation::from_image(vec![1, 0]).unwrap();
        let c3 = chain(3);
        assert!(Kite::new(c3.clone(), Permutation::identity(2), Permutation::identity(2)).is_ok());
        assert!(matches!(
            Kite::new(c3, Permutation::identity(2), swap.clone()),
            Err(KiteError::NotWeaklyCommutative(_))
        ));
        assert!(Kite::new(NatChain, Permutation::identity(2), swap).is_ok());
        assert!(Kite::new(NatChain, Permutation::identity(2), Permutation::identity(3)).is_err());
    }

    #[test]
    fn order_on_finite_chain() {
        let k = Kite::new(chain(5), Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert!(!k.leq(&k.lower(vec![3]).unwrap(), &k.upper(vec![3]).unwrap()));
        assert!(k.leq(&k.lower(vec![1]).unwrap(), &k.upper(vec![3]).unwrap()));
        assert!(k.leq(&k.zero(), &k.one()));
    }

    #[test]
    fn foreign_element_is_usage_error() {
        let k = Kite::new(chain(2), Permutation::identity(1), Permutation::identity(1)).unwrap();
        let bad = KiteElement { sort: Sort::Lower, coords: BTreeMap::from([(0, 7usize)]) };
        assert!(matches!(k.add(&bad, &k.zero()), Err(KiteError::NotMember(_))));
        let far = KiteElement { sort: Sort::Lower, coords: BTreeMap::from([(3, 1usize)]) };
        assert!(matches!(k.add(&far, &k.zero()), Err(KiteError::NotMember(_))));
    }

    #[test]
    fn integer_index_shift() {
        let k = Kite::over_integers(NatChain, IndexRule::Shift(0), IndexRule::Shift(-1)).unwrap();
        let a = k.element(Sort::Upper, [(0, 5), (1, 5)]).unwrap();
        let f = k.element(Sort::Lower, [(1, 2)]).unwrap();
        // (II): coordinate i uses f_{i+1}
        assert_eq!(k.add(&a, &f).unwrap(), Some(k.element(Sort::Upper, [(0, 3), (1, 5)]).unwrap()));
        let (minus, _) = k.negations(&f);
        assert_eq!(k.add(&minus, &f).unwrap(), Some(k.one()));
    }
}
