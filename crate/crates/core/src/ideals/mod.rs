//! Ideals, normal ideals, congruences and quotients of finite GPEAs.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::algebra::{AlgebraError, Gpea, PartialTable};
use crate::kite::{ExplicitKite, Sort};
use crate::limits::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("the set is not an ideal")]
    NotIdeal,
    #[error("the ideal is not normal")]
    NotNormal,
    #[error("carrier of {size} elements exceeds the ideal enumeration cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not compatible with + at ({0}, {1}) and ({2}, {3})")]
    NotCompatible(usize, usize, usize, usize),
    #[error("quotient is not a GPEA: {0}")]
    Quotient(AlgebraError),
}

/// A nonempty, downward closed, sum closed subset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: FixedBitSet,
}

impl Ideal {
    /// Wraps a set after checking both closure conditions.
    pub fn new(e: &Gpea, members: FixedBitSet) -> Result<Self, IdealError> {
        if members.len() != e.size() || !is_ideal(e, &members) {
            return Err(IdealError::NotIdeal);
        }
        Ok(Ideal { members })
    }

    pub fn from_elements(e: &Gpea, elements: &[usize]) -> Result<Self, IdealError> {
        let mut set = FixedBitSet::with_capacity(e.size());
        for &x in elements {
            if x >= e.size() {
                return Err(IdealError::NotIdeal);
            }
            set.insert(x);
        }
        Self::new(e, set)
    }

    pub fn zero(e: &Gpea) -> Self {
        let mut members = FixedBitSet::with_capacity(e.size());
        members.insert(e.zero());
        Ideal { members }
    }

    pub fn whole(e: &Gpea) -> Self {
        let mut members = FixedBitSet::with_capacity(e.size());
        members.insert_range(..);
        Ideal { members }
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    /// `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.len() < self.members.len()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ideal { members }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

pub fn is_ideal(e: &Gpea, set: &FixedBitSet) -> bool {
    if set.count_ones(..) == 0 {
        return false;
    }
    let down = set.ones().all(|y| e.order().down_set(y).is_subset(set));
    down && set
        .ones()
        .all(|x| set.ones().all(|y| e.add(x, y).is_none_or(|s| set.contains(s))))
}

/// Least ideal containing `seed` and `0`.
pub fn ideal_closure(e: &Gpea, seed: &FixedBitSet) -> Ideal {
    let mut members = FixedBitSet::with_capacity(e.size());
    members.insert(e.zero());
    let queue: VecDeque<usize> = seed.ones().collect();
    grow(e, &mut members, queue);
    Ideal { members }
}

/// Adds queued elements and everything they force, keeping `members` an ideal.
fn grow(e: &Gpea, members: &mut FixedBitSet, mut queue: VecDeque<usize>) {
    while let Some(y) = queue.pop_front() {
        if members.contains(y) {
            continue;
        }
        members.insert(y);
        for x in e.order().down_set(y).ones() {
            if !members.contains(x) {
                queue.push_back(x);
            }
        }
        let current: Vec<usize> = members.ones().collect();
        for z in current {
            for s in [e.add(y, z), e.add(z, y)].into_iter().flatten() {
                if !members.contains(s) {
                    queue.push_back(s);
                }
            }
        }
    }
}

fn join_element(e: &Gpea, ideal: &Ideal, x: usize) -> Ideal {
    let mut members = ideal.members.clone();
    grow(e, &mut members, VecDeque::from([x]));
    Ideal { members }
}

/// Every ideal contained in `bound`, in discovery order from `{0}`.
///
/// Each ideal strictly above `J` contains an element minimal outside `J`,
/// so joining such elements one at a time reaches every ideal.
pub fn enumerate_ideals_within(
    e: &Gpea,
    bound: &Ideal,
    normal_only: bool,
    limits: &Limits,
) -> Result<Vec<Ideal>, IdealError> {
    if bound.len() > limits.ideal_carrier {
        return Err(IdealError::TooLarge { size: bound.len(), cap: limits.ideal_carrier });
    }
    let start = Ideal::zero(e);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([start.members.clone()]);
    let mut found = vec![start];
    let mut k = 0;
    while k < found.len() {
        let current = found[k].clone();
        k += 1;
        for x in bound.members.ones() {
            if current.contains(x) {
                continue;
            }
            let minimal = e.order().down_set(x).ones().all(|y| y == x || current.contains(y));
            if !minimal {
                continue;
            }
            let next = join_element(e, &current, x);
            if next.is_subset(bound) && seen.insert(next.members.clone()) {
                found.push(next);
            }
        }
    }
    if normal_only {
        found.retain(|i| is_normal_unchecked(e, i));
    }
    found.sort_by_key(|i| (i.len(), i.elements()));
    Ok(found)
}

pub fn enumerate_ideals(e: &Gpea, normal_only: bool, limits: &Limits) -> Result<Vec<Ideal>, IdealError> {
    if e.size() > limits.ideal_carrier {
        return Err(IdealError::TooLarge { size: e.size(), cap: limits.ideal_carrier });
    }
    enumerate_ideals_within(e, &Ideal::whole(e), normal_only, limits)
}

/// `x + I = I + x` for every `x`.
pub fn is_normal(e: &Gpea, ideal: &Ideal) -> Result<bool, IdealError> {
    if ideal.members.len() != e.size() || !is_ideal(e, &ideal.members) {
        return Err(IdealError::NotIdeal);
    }
    Ok(is_normal_unchecked(e, ideal))
}

fn is_normal_unchecked(e: &Gpea, ideal: &Ideal) -> bool {
    let n = e.size();
    let mut left = FixedBitSet::with_capacity(n);
    let mut right = FixedBitSet::with_capacity(n);
    e.elements().all(|x| {
        left.clear();
        right.clear();
        for y in ideal.members.ones() {
            if let Some(s) = e.add(x, y) {
                left.insert(s);
            }
            if let Some(s) = e.add(y, x) {
                right.insert(s);
            }
        }
        left == right
    })
}

/// Least normal ideal containing `seed`.
pub fn normal_closure(e: &Gpea, seed: &FixedBitSet) -> Ideal {
    let mut ideal = ideal_closure(e, seed);
    loop {
        let mut queue = VecDeque::new();
        for y in ideal.members.ones() {
            for x in e.elements() {
                // x + y = z + x and y + x = x + w with z, w forced into the ideal
                if let Some(z) = e.add(x, y).and_then(|s| e.left_diff_opt(s, x)) {
                    if !ideal.contains(z) {
                        queue.push_back(z);
                    }
                }
                if let Some(w) = e.add(y, x).and_then(|s| e.right_diff_opt(x, s)) {
                    if !ideal.contains(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        if queue.is_empty() {
            return ideal;
        }
        grow(e, &mut ideal.members, queue);
    }
}

/// The intersection of all nontrivial normal ideals, when it is itself
/// nontrivial. Every nontrivial normal ideal contains the normal closure of
/// some atom, so intersecting those closures suffices.
pub fn least_nontrivial_normal_ideal(e: &Gpea) -> Option<Ideal> {
    let atoms = e.atoms();
    let mut acc: Option<Ideal> = None;
    for a in atoms {
        let mut seed = FixedBitSet::with_capacity(e.size());
        seed.insert(a);
        let closure = normal_closure(e, &seed);
        acc = Some(match acc {
            None => closure,
            Some(i) => i.intersection(&closure),
        });
    }
    acc.filter(|i| !i.is_trivial())
}

/// Trivial, or has a least nontrivial normal ideal.
pub fn is_subdirectly_irreducible(e: &Gpea) -> bool {
    e.is_trivial() || least_nontrivial_normal_ideal(e).is_some()
}

/// Proper, and every strictly larger ideal is the whole carrier.
pub fn is_maximal(e: &Gpea, ideal: &Ideal) -> bool {
    ideal.is_proper()
        && e.elements()
            .filter(|&x| !ideal.contains(x))
            .all(|x| !join_element(e, ideal, x).is_proper())
}

/// An equivalence on the carrier; `block[x]` is the least element of the
/// class of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    block: Vec<usize>,
}

impl Congruence {
    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    /// Block representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.block.len()).filter(|&x| self.block[x] == x).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| (0..self.block.len()).filter(|&x| self.block[x] == r).collect())
            .collect()
    }
}

/// `a ~ b` iff `a / e = b / f` for some `e ≤ a`, `f ≤ b` in the ideal.
/// Transitivity and compatibility are verified, not assumed.
pub fn congruence_from_normal_ideal(e: &Gpea, ideal: &Ideal) -> Result<Congruence, IdealError> {
    if !is_normal(e, ideal)? {
        return Err(IdealError::NotNormal);
    }
    let n = e.size();
    let residues: Vec<FixedBitSet> = e
        .elements()
        .map(|a| {
            let mut r = FixedBitSet::with_capacity(n);
            for x in ideal.members.ones() {
                if let Some(d) = e.left_diff_opt(a, x) {
                    r.insert(d);
                }
            }
            r
        })
        .collect();
    let related = |a: usize, b: usize| residues[a].intersection(&residues[b]).next().is_some();
    let mut block = vec![usize::MAX; n];
    for a in 0..n {
        if block[a] != usize::MAX {
            continue;
        }
        for b in a..n {
            if related(a, b) {
                if block[b] != usize::MAX {
                    return Err(IdealError::NotTransitive(block[b], a, b));
                }
                block[b] = a;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if (block[a] == block[b]) != related(a, b) {
                return Err(IdealError::NotTransitive(block[a], a, b));
            }
        }
    }
    // compatibility, block by block
    let mut sum_block: Vec<Option<(usize, usize, usize)>> = vec![None; n * n];
    for (a, b, s) in e.table().defined() {
        let slot = &mut sum_block[block[a] * n + block[b]];
        match *slot {
            None => *slot = Some((a, b, block[s])),
            Some((a0, b0, t)) if t != block[s] => return Err(IdealError::NotCompatible(a0, b0, a, b)),
            Some(_) => {}
        }
    }
    Ok(Congruence { block })
}

/// `E / I` on block representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Gpea,
    pub congruence: Congruence,
    /// `representatives[k]` is the least element of block `k`.
    pub representatives: Vec<usize>,
}

pub fn quotient(e: &Gpea, ideal: &Ideal) -> Result<Quotient, IdealError> {
    let congruence = congruence_from_normal_ideal(e, ideal)?;
    let representatives = congruence.representatives();
    let mut position = vec![0; e.size()];
    for (k, &r) in representatives.iter().enumerate() {
        position[r] = k;
    }
    let mut table = PartialTable::undefined(representatives.len());
    for (a, b, s) in e.table().defined() {
        let [x, y, z] = [a, b, s].map(|v| position[congruence.block_of(v)]);
        table.set(x, y, Some(z));
    }
    let labels = representatives.iter().map(|&r| format!("[{}]", e.label(r))).collect();
    let algebra = Gpea::new(table, position[congruence.block_of(e.zero())])
        .and_then(|g| g.with_labels(labels))
        .map_err(IdealError::Quotient)?;
    Ok(Quotient { algebra, congruence, representatives })
}

/// `H^I`: the lower tuples with every coordinate in `h`.
pub fn kite_lower_ideal(k: &ExplicitKite, h: &Ideal) -> Result<Ideal, IdealError> {
    let base = k.base();
    if !is_normal(base, h)? {
        return Err(IdealError::NotNormal);
    }
    let mut members = FixedBitSet::with_capacity(k.size());
    for x in 0..k.block() {
        if k.tuple(x).iter().all(|&v| h.contains(v)) {
            members.insert(x);
        }
    }
    let ideal = Ideal::new(k.gpea(), members)?;
    if !is_normal_unchecked(k.gpea(), &ideal) {
        return Err(IdealError::NotNormal);
    }
    Ok(ideal)
}

/// `π_j(J) = { f_j : f ∈ J }` for an ideal of lower tuples.
pub fn coordinate_projection(k: &ExplicitKite, ideal: &Ideal, j: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(k.base().size());
    for x in ideal.members.ones() {
        debug_assert_eq!(k.sort_of(x), Sort::Lower);
        out.insert(k.tuple(x)[j]);
    }
    out
}
