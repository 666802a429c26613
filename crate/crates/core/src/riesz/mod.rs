//! Riesz interpolation and decomposition properties.
//!
//! The finite checks are exhaustive and return the first counterexample in
//! element order. [`kite_rdp_decompose`] builds decomposition tables in a
//! kite from tables in its base.

mod kite;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::algebra::Gpea;
use crate::limits::Limits;

pub use kite::{kite_rdp_decompose, DecomposeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RieszProperty {
    Rip,
    Rdp0,
    Rdp,
    Rdp1,
    Rdp2,
}

impl RieszProperty {
    pub const ALL: [RieszProperty; 5] = [
        RieszProperty::Rip,
        RieszProperty::Rdp0,
        RieszProperty::Rdp,
        RieszProperty::Rdp1,
        RieszProperty::Rdp2,
    ];
}

impl fmt::Display for RieszProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RieszProperty::Rip => "RIP",
            RieszProperty::Rdp0 => "RDP0",
            RieszProperty::Rdp => "RDP",
            RieszProperty::Rdp1 => "RDP1",
            RieszProperty::Rdp2 => "RDP2",
        })
    }
}

impl FromStr for RieszProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rip" => Ok(RieszProperty::Rip),
            "rdp0" => Ok(RieszProperty::Rdp0),
            "rdp" => Ok(RieszProperty::Rdp),
            "rdp1" => Ok(RieszProperty::Rdp1),
            "rdp2" => Ok(RieszProperty::Rdp2),
            other => Err(format!("unknown property {other:?}; expected rip, rdp0, rdp, rdp1 or rdp2")),
        }
    }
}

/// `a1 = c11 + c12`, `a2 = c21 + c22`, `b1 = c11 + c21`, `b2 = c12 + c22`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionTable<T> {
    pub c11: T,
    pub c12: T,
    pub c21: T,
    pub c22: T,
}

impl<T: PartialEq> DecompositionTable<T> {
    /// Rechecks the four defining equations under `add`.
    pub fn certifies<F>(&self, add: F, a: [&T; 2], b: [&T; 2]) -> bool
    where
        F: Fn(&T, &T) -> Option<T>,
    {
        let eq = |x: &T, y: &T, z: &T| add(x, y).as_ref() == Some(z);
        eq(&self.c11, &self.c12, a[0])
            && eq(&self.c21, &self.c22, a[1])
            && eq(&self.c11, &self.c21, b[0])
            && eq(&self.c12, &self.c22, b[1])
    }
}

impl<T: fmt::Display> fmt::Display for DecompositionTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} | {} {}]", self.c11, self.c12, self.c21, self.c22)
    }
}

/// Positive evidence attached to a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Table(DecompositionTable<usize>),
    Interpolant(usize),
    Split(usize, usize),
}

/// Result of an exhaustive check. `holds` iff `counterexample` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RieszReport {
    pub property: RieszProperty,
    pub holds: bool,
    /// `(a1, a2, b1, b2)` for RIP and the RDP family, `(a, b, c)` for RDP0.
    pub counterexample: Option<Vec<usize>>,
    /// The first witness found, if any instance was nontrivial.
    pub witness: Option<Witness>,
    pub instances: usize,
}

impl RieszReport {
    fn new(property: RieszProperty) -> Self {
        RieszReport { property, holds: true, counterexample: None, witness: None, instances: 0 }
    }

    fn fail(&mut self, counterexample: Vec<usize>) {
        self.holds = false;
        self.counterexample = Some(counterexample);
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RieszError {
    #[error("carrier of {size} elements exceeds the Riesz check cap of {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// Exhaustive check of one property.
pub fn check(e: &Gpea, property: RieszProperty, limits: &Limits) -> Result<RieszReport, RieszError> {
    if e.size() > limits.riesz_carrier {
        return Err(RieszError::TooLarge { size: e.size(), cap: limits.riesz_carrier });
    }
    Ok(match property {
        RieszProperty::Rip => check_rip(e),
        RieszProperty::Rdp0 => check_rdp0(e),
        level => check_rdp_level(e, level),
    })
}

pub fn check_rip(e: &Gpea) -> RieszReport {
    let mut report = RieszReport::new(RieszProperty::Rip);
    let order = e.order();
    for a1 in e.elements() {
        for a2 in e.elements() {
            let above = intersect(order.up_set(a1), order.up_set(a2));
            for b1 in above.ones() {
                for b2 in above.ones() {
                    report.instances += 1;
                    let below = intersect(order.down_set(b1), order.down_set(b2));
                    match above.intersection(&below).next() {
                        Some(c) => {
                            if report.witness.is_none() && a1 != a2 && b1 != b2 {
                                report.witness = Some(Witness::Interpolant(c));
                            }
                        }
                        None => {
                            report.fail(vec![a1, a2, b1, b2]);
                            return report;
                        }
                    }
                }
            }
        }
    }
    report
}

/// `b1 ≤ b`, `c1 ≤ c` with `a = b1 + c1`.
pub fn rdp0_split(e: &Gpea, a: usize, b: usize, c: usize) -> Option<(usize, usize)> {
    e.order()
        .down_set(b)
        .ones()
        .filter_map(|b1| e.right_diff_opt(b1, a).map(|c1| (b1, c1)))
        .find(|&(_, c1)| e.leq(c1, c))
}

pub fn check_rdp0(e: &Gpea) -> RieszReport {
    let mut report = RieszReport::new(RieszProperty::Rdp0);
    for (b, c, s) in e.table().defined() {
        for a in e.order().down_set(s).ones() {
            report.instances += 1;
            match rdp0_split(e, a, b, c) {
                Some((b1, c1)) => {
                    if report.witness.is_none() && b1 != e.zero() && c1 != e.zero() {
                        report.witness = Some(Witness::Split(b1, c1));
                    }
                }
                None => {
                    report.fail(vec![a, b, c]);
                    return report;
                }
            }
        }
    }
    report
}

/// A table for `a1 + a2 = b1 + b2` meeting `property` (one of the RDP
/// levels; RIP and RDP0 are treated as RDP). The trivial table is preferred
/// when `a = b`.
pub fn find_table(e: &Gpea, a: [usize; 2], b: [usize; 2], property: RieszProperty) -> Option<DecompositionTable<usize>> {
    let [a1, a2] = a;
    let [b1, b2] = b;
    let sum = e.add(a1, a2)?;
    if e.add(b1, b2) != Some(sum) {
        return None;
    }
    let zero = e.zero();
    if a == b {
        return Some(DecompositionTable { c11: a1, c12: zero, c21: zero, c22: a2 });
    }
    let order = e.order();
    for c11 in order.down_set(a1).intersection(order.down_set(b1)) {
        let (Some(c12), Some(c21)) = (e.right_diff_opt(c11, a1), e.right_diff_opt(c11, b1)) else {
            continue;
        };
        let Some(c22) = e.right_diff_opt(c21, a2) else {
            continue;
        };
        if e.add(c12, c22) != Some(b2) {
            continue;
        }
        let extra = match property {
            RieszProperty::Rdp1 => e.com(c12, c21),
            RieszProperty::Rdp2 => order.down_set(c12).intersection(order.down_set(c21)).all(|x| x == zero),
            _ => true,
        };
        if extra {
            return Some(DecompositionTable { c11, c12, c21, c22 });
        }
    }
    None
}

fn check_rdp_level(e: &Gpea, property: RieszProperty) -> RieszReport {
    let mut report = RieszReport::new(property);
    let mut by_sum: Vec<Vec<(usize, usize)>> = vec![Vec::new(); e.size()];
    for (x, y, s) in e.table().defined() {
        by_sum[s].push((x, y));
    }
    for pairs in &by_sum {
        for &(a1, a2) in pairs {
            for &(b1, b2) in pairs {
                report.instances += 1;
                match find_table(e, [a1, a2], [b1, b2], property) {
                    Some(t) => {
                        if report.witness.is_none() && (a1, a2) != (b1, b2) {
                            report.witness = Some(Witness::Table(t));
                        }
                    }
                    None => {
                        report.fail(vec![a1, a2, b1, b2]);
                        return report;
                    }
                }
            }
        }
    }
    report
}

fn intersect(x: &FixedBitSet, y: &FixedBitSet) -> FixedBitSet {
    let mut out = x.clone();
    out.intersect_with(y);
    out
}

/// All five properties, with the implications that are observed rather
/// than asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RieszProfile {
    pub reports: Vec<RieszReport>,
}

impl RieszProfile {
    pub fn of(e: &Gpea, limits: &Limits) -> Result<Self, RieszError> {
        let reports = RieszProperty::ALL
            .iter()
            .map(|&p| check(e, p, limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RieszProfile { reports })
    }

    pub fn holds(&self, property: RieszProperty) -> bool {
        self.reports.iter().any(|r| r.property == property && r.holds)
    }

    pub fn report(&self, property: RieszProperty) -> &RieszReport {
        self.reports.iter().find(|r| r.property == property).expect("all properties checked")
    }

    /// Instance-level observations: `RDP2 ⇒ RDP1` and `RDP0 ⇔ RIP`.
    pub fn observations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.holds(RieszProperty::Rdp2) && !self.holds(RieszProperty::Rdp1) {
            out.push("RDP2 holds but RDP1 fails".to_string());
        }
        if self.holds(RieszProperty::Rdp0) != self.holds(RieszProperty::Rip) {
            out.push(format!(
                "RDP0 {} while RIP {}",
                verdict(self.holds(RieszProperty::Rdp0)),
                verdict(self.holds(RieszProperty::Rip))
            ));
        }
        out
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}
