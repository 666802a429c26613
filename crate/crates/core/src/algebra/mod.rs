//! Finite generalized pseudo effect algebras and pseudo effect algebras.
//!
//! A [`Gpea`] is a validated partial addition table with a two-sided unit.
//! Construction runs the full GP1–GP5 check, then caches the induced order
//! and both difference tables so every derived query is a lookup.

mod axioms;
mod iso;
mod table;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use axioms::{verify_gpea_axioms, verify_pea_table, Axiom, AxiomReport, Violation};
pub use iso::{find_isomorphism, find_pea_isomorphism, is_isomorphism};
pub use table::PartialTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, found: usize, expected: usize },
    #[error("entry ({row}, {column}) = {value} is out of range for carrier size {size}")]
    EntryOutOfRange { row: usize, column: usize, value: usize, size: usize },
    #[error("element {element} is out of range for carrier size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("axioms violated: {0}")]
    Axioms(AxiomReport),
    #[error("{lower} is not below {upper}")]
    NotComparable { lower: usize, upper: usize },
    #[error("difference of {upper} by {lower} is not unique")]
    NonUniqueDifference { lower: usize, upper: usize },
    #[error("left and right order witnesses disagree at ({lower}, {upper})")]
    OrderWitnessMismatch { lower: usize, upper: usize },
    #[error("{0} labels given for carrier of size {1}")]
    LabelCount(usize, usize),
}

/// The induced partial order, stored as up-sets and down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl OrderRelation {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Elements above `a`, including `a`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Elements below `a`, including `a`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }
}

/// Computes `a <= b` from both witness forms and insists they agree.
pub fn derive_order(table: &PartialTable) -> Result<OrderRelation, AlgebraError> {
    let n = table.size();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut up_left = vec![FixedBitSet::with_capacity(n); n];
    for (a, c, b) in table.defined() {
        // a + c = b witnesses a <= b; the same entry read as d + a' = b
        // with d = a witnesses c <= b from the left.
        up[a].insert(b);
        up_left[c].insert(b);
    }
    for a in 0..n {
        if up[a] != up_left[a] {
            let b = up[a].symmetric_difference(&up_left[a]).next().unwrap_or(a);
            return Err(AlgebraError::OrderWitnessMismatch { lower: a, upper: b });
        }
    }
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            down[b].insert(a);
        }
    }
    Ok(OrderRelation { up, down })
}

/// A finite generalized pseudo effect algebra.
#[derive(Clone, Debug)]
pub struct Gpea {
    table: PartialTable,
    zero: usize,
    order: OrderRelation,
    right_diff: Vec<u32>,
    left_diff: Vec<u32>,
    labels: Option<Vec<String>>,
    com: OnceLock<Vec<FixedBitSet>>,
}

impl PartialEq for Gpea {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.zero == other.zero
    }
}

impl Eq for Gpea {}

const NONE: u32 = u32::MAX;

impl Gpea {
    pub fn new(table: PartialTable, zero: usize) -> Result<Self, AlgebraError> {
        let report = verify_gpea_axioms(&table, zero)?;
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        let order = derive_order(&table)?;
        let n = table.size();
        let mut right_diff = vec![NONE; n * n];
        let mut left_diff = vec![NONE; n * n];
        for (a, c, b) in table.defined() {
            // a + c = b: c = a \ b (right), a = b / c (left)
            if right_diff[a * n + b] != NONE {
                return Err(AlgebraError::NonUniqueDifference { lower: a, upper: b });
            }
            right_diff[a * n + b] = c as u32;
            if left_diff[b * n + c] != NONE {
                return Err(AlgebraError::NonUniqueDifference { lower: c, upper: b });
            }
            left_diff[b * n + c] = a as u32;
        }
        Ok(Gpea {
            table,
            zero,
            order,
            right_diff,
            left_diff,
            labels: None,
            com: OnceLock::new(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size() {
            return Err(AlgebraError::LabelCount(labels.len(), self.size()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.table.size()
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn table(&self) -> &PartialTable {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.table.get(a, b)
    }

    pub fn order(&self) -> &OrderRelation {
        &self.order
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn check_element(&self, a: usize) -> Result<(), AlgebraError> {
        if a < self.size() {
            Ok(())
        } else {
            Err(AlgebraError::ElementOutOfRange { element: a, size: self.size() })
        }
    }

    /// The unique `d` with `d + a = b`.
    pub fn left_diff(&self, b: usize, a: usize) -> Result<usize, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        self.left_diff_opt(b, a)
            .ok_or(AlgebraError::NotComparable { lower: a, upper: b })
    }

    /// The unique `c` with `a + c = b`.
    pub fn right_diff(&self, a: usize, b: usize) -> Result<usize, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        self.right_diff_opt(a, b)
            .ok_or(AlgebraError::NotComparable { lower: a, upper: b })
    }

    #[inline]
    pub(crate) fn left_diff_opt(&self, b: usize, a: usize) -> Option<usize> {
        let v = self.left_diff[b * self.size() + a];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    pub(crate) fn right_diff_opt(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.right_diff[a * self.size() + b];
        (v != NONE).then_some(v as usize)
    }

    pub fn is_weakly_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a..n).all(|b| self.table.is_defined(a, b) == self.table.is_defined(b, a)))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a..n).all(|b| self.add(a, b) == self.add(b, a)))
    }

    pub fn is_total(&self) -> bool {
        self.table.defined().count() == self.size() * self.size()
    }

    pub fn is_directed(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (a..n).all(|b| self.order.up_set(a).intersection(self.order.up_set(b)).next().is_some())
        })
    }

    /// `x + y` and `y + x` are both undefined or both defined and equal.
    #[inline]
    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.add(x, y) == self.add(y, x)
    }

    /// For all `x <= a`, `y <= b`: `x` and `y` commute (partiality-symmetric).
    pub fn com(&self, a: usize, b: usize) -> bool {
        self.com_matrix()[a].contains(b)
    }

    fn com_matrix(&self) -> &Vec<FixedBitSet> {
        self.com.get_or_init(|| {
            let n = self.size();
            let mut commuting = vec![FixedBitSet::with_capacity(n); n];
            for x in 0..n {
                for y in 0..n {
                    if self.commute(x, y) {
                        commuting[x].insert(y);
                    }
                }
            }
            // below[x] = { b : every y <= b commutes with x }
            let below: Vec<FixedBitSet> = (0..n)
                .map(|x| {
                    let mut s = FixedBitSet::with_capacity(n);
                    for b in 0..n {
                        if self.order.down_set(b).is_subset(&commuting[x]) {
                            s.insert(b);
                        }
                    }
                    s
                })
                .collect();
            (0..n)
                .map(|a| {
                    let mut row = FixedBitSet::with_capacity(n);
                    row.insert_range(..);
                    for x in self.order.down_set(a).ones() {
                        row.intersect_with(&below[x]);
                    }
                    row
                })
                .collect()
        })
    }

    /// Two-out-of-three closure with `0` in the set.
    pub fn is_sub_gpea(&self, set: &FixedBitSet) -> bool {
        if !set.contains(self.zero) {
            return false;
        }
        self.table.defined().all(|(x, y, z)| {
            let count = [x, y, z].iter().filter(|&&e| set.contains(e)).count();
            count < 2 || count == 3
        })
    }

    /// Elements covering zero.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| a != self.zero && self.order.down_set(a).count_ones(..) == 2)
            .collect()
    }

    /// Restriction to a sub-GPEA given as a member list; zero must be listed.
    pub fn restrict(&self, keep: &[usize]) -> Result<Gpea, AlgebraError> {
        let zero = keep
            .iter()
            .position(|&x| x == self.zero)
            .ok_or(AlgebraError::ElementOutOfRange { element: self.zero, size: keep.len() })?;
        Gpea::new(self.table.restrict(keep), zero)
    }
}

/// A finite pseudo effect algebra: a GPEA with a top element and unique
/// left and right complements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pea {
    base: Gpea,
    top: usize,
    minus: Vec<usize>,
    tilde: Vec<usize>,
}

/// Checks the pseudo effect algebra axioms for a validated GPEA with the
/// proposed top. (i) and (iii) coincide with GP1 and GP2 and hold already.
pub fn verify_pea_axioms(gpea: &Gpea, top: usize) -> Result<AxiomReport, AlgebraError> {
    gpea.check_element(top)?;
    Ok(axioms::verify_pea_remaining(gpea.table(), gpea.zero(), top))
}

impl Pea {
    pub fn new(base: Gpea, top: usize) -> Result<Self, AlgebraError> {
        let report = verify_pea_axioms(&base, top)?;
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        let n = base.size();
        let minus = (0..n).map(|a| base.left_diff_opt(top, a).expect("complement")).collect();
        let tilde = (0..n).map(|a| base.right_diff_opt(a, top).expect("complement")).collect();
        Ok(Pea { base, top, minus, tilde })
    }

    pub fn gpea(&self) -> &Gpea {
        &self.base
    }

    pub fn into_gpea(self) -> Gpea {
        self.base
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn zero(&self) -> usize {
        self.base.zero()
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.base.add(a, b)
    }

    /// `(a⁻, a~)` with `a⁻ + a = 1 = a + a~`.
    pub fn negations(&self, a: usize) -> (usize, usize) {
        (self.minus[a], self.tilde[a])
    }

    pub fn minus(&self, a: usize) -> usize {
        self.minus[a]
    }

    pub fn tilde(&self, a: usize) -> usize {
        self.tilde[a]
    }

    /// `a⁻ = a~` for every element.
    pub fn is_symmetric(&self) -> bool {
        self.minus == self.tilde
    }

    pub fn asymmetry_witness(&self) -> Option<usize> {
        (0..self.size()).find(|&a| self.minus[a] != self.tilde[a])
    }
}

/// Pointwise truth values for the elementary predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub weakly_commutative: bool,
    pub commutative: bool,
    pub total: bool,
    pub directed: bool,
}

impl Predicates {
    pub fn of(e: &Gpea) -> Self {
        Predicates {
            weakly_commutative: e.is_weakly_commutative(),
            commutative: e.is_commutative(),
            total: e.is_total(),
            directed: e.is_directed(),
        }
    }
}

/// Small named algebras used by tests, fixtures and the command line.
pub mod catalog {
    use super::*;

    /// Chain `{0..k-1}` with `a + b` defined iff `a + b < k`.
    pub fn chain(k: usize) -> Gpea {
        Gpea::new(PartialTable::from_fn(k, |a, b| (a + b < k).then_some(a + b)).unwrap(), 0).unwrap()
    }

    pub fn chain_pea(k: usize) -> Pea {
        Pea::new(chain(k), k - 1).unwrap()
    }

    /// `{0, a, a', b, b', 1}` = 0..5 with `a + a' = b + b' = 1` both ways.
    pub fn mo2() -> Pea {
        let t = PartialTable::from_fn(6, |x, y| match (x, y) {
            (0, y) => Some(y),
            (x, 0) => Some(x),
            (1, 2) | (2, 1) | (3, 4) | (4, 3) => Some(5),
            _ => None,
        })
        .unwrap();
        Pea::new(Gpea::new(t, 0).unwrap(), 5).unwrap()
    }

    /// Boolean algebra 2² as `{0, a, b, 1}` = 0..3.
    pub fn boolean4() -> Pea {
        let t = PartialTable::from_fn(4, |x, y| match (x, y) {
            (0, y) => Some(y),
            (x, 0) => Some(x),
            (1, 2) | (2, 1) => Some(3),
            _ => None,
        })
        .unwrap();
        Pea::new(Gpea::new(t, 0).unwrap(), 3).unwrap()
    }

    pub fn trivial() -> Gpea {
        chain(1)
    }

    /// `{0, a, b}` with only unit sums.
    pub fn antichain3() -> Gpea {
        let t = PartialTable::from_fn(3, |x, y| match (x, y) {
            (0, y) => Some(y),
            (x, 0) => Some(x),
            _ => None,
        })
        .unwrap();
        Gpea::new(t, 0).unwrap()
    }

    /// Direct product, element `(x, y)` at index `x * |f| + y`.
    pub fn product(e: &Gpea, f: &Gpea) -> Gpea {
        let m = f.size();
        let t = PartialTable::from_fn(e.size() * m, |x, y| {
            let a = e.add(x / m, y / m)?;
            let b = f.add(x % m, y % m)?;
            Some(a * m + b)
        })
        .unwrap();
        Gpea::new(t, e.zero() * m + f.zero()).expect("product of GPEAs")
    }

    pub fn product_pea(e: &Pea, f: &Pea) -> Pea {
        let top = e.top() * f.size() + f.top();
        Pea::new(product(e.gpea(), f.gpea()), top).expect("product of PEAs")
    }
}

#[cfg(test)]
pub(crate) use catalog as fixtures;

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn chain_order_and_diffs() {
        let c3 = chain(3);
        assert!(c3.leq(1, 2));
        assert!((0..3).all(|a| c3.leq(0, a)));
        let c4 = chain(4);
        assert_eq!(c4.left_diff(3, 1), Ok(2));
        assert_eq!(c3.right_diff(1, 1), Ok(0));
        assert_eq!(c3.left_diff(1, 2), Err(AlgebraError::NotComparable { lower: 2, upper: 1 }));
    }

    #[test]
    fn mo2_order_and_negations() {
        let m = mo2();
        assert!(!m.gpea().leq(1, 3) && !m.gpea().leq(3, 1));
        assert_eq!(m.gpea().left_diff(5, 1), Ok(2));
        assert_eq!(m.negations(1), (2, 2));
        assert_eq!(m.negations(0), (5, 5));
        assert_eq!(m.negations(5), (0, 0));
    }

    #[test]
    fn chain_negations() {
        let c = chain_pea(4);
        assert_eq!(c.negations(1), (2, 2));
        assert_eq!(c.minus(0), 3);
        assert_eq!(c.tilde(3), 0);
    }

    #[test]
    fn predicates_on_small_algebras() {
        let p = Predicates::of(&chain(3));
        assert!(p.weakly_commutative && !p.total && p.directed);
        assert!(!antichain3().is_directed());
        let t = Predicates::of(&trivial());
        assert!(t.weakly_commutative && t.total && t.directed);
    }

    #[test]
    fn com_examples() {
        let m = mo2();
        assert!(m.gpea().com(1, 3));
        let c = chain(4);
        assert!((0..4).all(|a| (0..4).all(|b| c.com(a, b))));
        assert!((0..6).all(|x| m.gpea().com(0, x)));
    }

    #[test]
    fn sub_gpea_closure() {
        let c3 = chain(3);
        let mut s = FixedBitSet::with_capacity(3);
        s.insert(0);
        assert!(c3.is_sub_gpea(&s));
        s.insert(1);
        assert!(!c3.is_sub_gpea(&s));
        s.insert(2);
        assert!(c3.is_sub_gpea(&s));
    }

    #[test]
    fn pea_top_declared_wrong() {
        assert!(matches!(Pea::new(chain(3), 1), Err(AlgebraError::Axioms(_))));
    }

    #[test]
    fn order_witness_forms_agree() {
        let m = mo2();
        let o = derive_order(m.gpea().table()).unwrap();
        assert_eq!(&o, m.gpea().order());
    }

    #[test]
    fn difference_round_trip() {
        let m = mo2();
        let e = m.gpea();
        for a in e.elements() {
            for b in e.elements().filter(|&b| e.leq(a, b)) {
                let d = e.left_diff(b, a).unwrap();
                let c = e.right_diff(a, b).unwrap();
                assert_eq!(e.add(d, a), Some(b));
                assert_eq!(e.add(a, c), Some(b));
                assert_eq!(e.right_diff(d, b), Ok(a));
            }
        }
    }
}
