//! Seeded random GPEAs and the property registry run over them.
//!
//! Tables are grown one proposed sum at a time from the bare unit rows and
//! a step is kept only when the axioms still hold, so every instance is a
//! GPEA by construction.

use std::fmt::Write as _;

use kitelab::algebra::{find_isomorphism, verify_gpea_axioms};
use kitelab::ideals::{
    enumerate_ideals, is_normal, least_nontrivial_normal_ideal, quotient, Ideal,
};
use kitelab::kite::unitization;
use kitelab::riesz::{self, RieszProfile, RieszProperty};
use kitelab::states::{find_states, kernel};
use kitelab::{ExplicitKite, Gpea, Limits, PartialTable, Pea, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::{emit_algebra, AlgebraFile};

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub density: f64,
    pub seed: u64,
    pub commutative: bool,
    pub count: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { min_size: 3, max_size: 6, density: 0.4, seed: 42, commutative: false, count: 200 }
    }
}

/// Grows a table from the bare unit rows. Each step proposes `a + b = s`
/// together with partner sums for GP2, fills in sums forced by
/// associativity, and keeps the step only if every axiom still holds.
/// `density` scales the number of proposals.
pub fn random_gpea<R: Rng + ?Sized>(rng: &mut R, size: usize, density: f64, commutative: bool) -> Gpea {
    let mut t = PartialTable::undefined(size);
    for a in 0..size {
        t.set(0, a, Some(a));
        t.set(a, 0, Some(a));
    }
    let proposals = if size < 2 { 0 } else { (density * (4 * size * size) as f64).ceil() as usize };
    for _ in 0..proposals {
        let (a, b) = (rng.gen_range(1..size), rng.gen_range(1..size));
        if t.is_defined(a, b) {
            continue;
        }
        let s = rng.gen_range(1..size);
        let mut trial = t.clone();
        let put = |t: &mut PartialTable, x: usize, y: usize| {
            if !t.is_defined(x, y) {
                t.set(x, y, Some(s));
            }
        };
        put(&mut trial, a, b);
        if commutative || rng.gen_bool(0.5) {
            put(&mut trial, b, a);
        } else {
            put(&mut trial, rng.gen_range(1..size), a);
            put(&mut trial, b, rng.gen_range(1..size));
        }
        if close_associativity(&mut trial, commutative) && verify_gpea_axioms(&trial, 0).is_ok_and(|r| r.passed()) {
            t = trial;
        }
    }
    Gpea::new(t, 0).expect("every accepted step passes the axioms")
}

/// Fills `a + (b + c)` from `(a + b) + c` and back until nothing changes.
/// `false` on a clash between two defined sides.
fn close_associativity(t: &mut PartialTable, commutative: bool) -> bool {
    let n = t.size();
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = t.get(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = t.get(b, c) else { continue };
                    let (x, y) = ((ab, c), (a, bc));
                    let (l, r) = (t.get(x.0, x.1), t.get(y.0, y.1));
                    let (target, v) = match (l, r) {
                        (Some(l), Some(r)) if l != r => return false,
                        (Some(l), None) => (y, l),
                        (None, Some(r)) => (x, r),
                        _ => continue,
                    };
                    if commutative && t.get(target.1, target.0).is_some_and(|w| w != v) {
                        return false;
                    }
                    t.set(target.0, target.1, Some(v));
                    if commutative {
                        t.set(target.1, target.0, Some(v));
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// `count` valid instances, drawing sizes uniformly from the range.
pub fn generate(config: &FuzzConfig) -> Vec<Gpea> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| {
            let size = rng.gen_range(config.min_size..=config.max_size);
            random_gpea(&mut rng, size, config.density, config.commutative)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    /// A violation is a counterexample to a proven claim.
    Asserted,
    /// Logged without a verdict.
    Observation,
    /// A hit is an example worth archiving.
    Search,
}

pub struct Property {
    pub name: &'static str,
    pub kind: PropertyKind,
    /// `Some(witness)` when the instance violates, is observed, or is a hit.
    pub check: fn(&Gpea, &Limits) -> Option<String>,
}

pub fn registry() -> Vec<Property> {
    use PropertyKind::*;
    vec![
        Property { name: "unitization-is-pea", kind: Asserted, check: unitization_is_pea },
        Property { name: "negation-formulas", kind: Asserted, check: negation_formulas },
        Property { name: "rdp-transfer", kind: Asserted, check: rdp_transfer },
        Property { name: "rdp-implications", kind: Asserted, check: rdp_implications },
        Property { name: "least-normal-ideal", kind: Asserted, check: least_ideal_oracle },
        Property { name: "quotients-under-rdp1", kind: Asserted, check: quotients_under_rdp1 },
        Property { name: "state-kernels-normal", kind: Asserted, check: state_kernels_normal },
        Property { name: "rdp2-without-rdp1", kind: Observation, check: rdp2_without_rdp1 },
        Property { name: "rdp0-vs-rip", kind: Observation, check: rdp0_vs_rip },
        Property { name: "non-normal-ideal", kind: Search, check: non_normal_ideal },
        Property { name: "rip-failure", kind: Search, check: rip_failure },
    ]
}

fn unitization_is_pea(e: &Gpea, limits: &Limits) -> Option<String> {
    if !e.is_weakly_commutative() {
        return None;
    }
    unitization(e, limits).err().map(|err| err.to_string())
}

fn negation_formulas(e: &Gpea, limits: &Limits) -> Option<String> {
    if !e.is_weakly_commutative() || e.size() > 5 {
        return None;
    }
    let swap = Permutation::from_image(vec![1, 0]).expect("swap");
    for perm in [Permutation::identity(1), swap] {
        let k = ExplicitKite::build(e, perm.clone(), perm, limits).ok()?;
        let p = k.pea();
        for x in 0..k.size() {
            let minus = (0..k.size()).find(|&d| p.add(d, x) == Some(p.top()));
            let tilde = (0..k.size()).find(|&d| p.add(x, d) == Some(p.top()));
            let (fm, ft) = k.formula_negations(x);
            if minus != Some(fm) || tilde != Some(ft) {
                return Some(format!("negations of {} in the {}-index kite", k.label(x), k.arity()));
            }
        }
    }
    None
}

fn rdp_transfer(e: &Gpea, limits: &Limits) -> Option<String> {
    if !e.is_weakly_commutative() {
        return None;
    }
    let k = unitization(e, limits).ok()?;
    for p in RieszProperty::ALL {
        let up = riesz::check(k.gpea(), p, limits).ok()?;
        if up.holds && !riesz::check(e, p, limits).ok()?.holds {
            return Some(format!("unitization has {p}, base does not"));
        }
    }
    None
}

fn rdp_implications(e: &Gpea, limits: &Limits) -> Option<String> {
    let profile = RieszProfile::of(e, limits).ok()?;
    use RieszProperty::*;
    for (strong, weak) in [(Rdp1, Rdp), (Rdp2, Rdp), (Rdp, Rdp0)] {
        if profile.holds(strong) && !profile.holds(weak) {
            return Some(format!("{strong} holds, {weak} fails"));
        }
    }
    None
}

fn rdp2_without_rdp1(e: &Gpea, limits: &Limits) -> Option<String> {
    let p = RieszProfile::of(e, limits).ok()?;
    (p.holds(RieszProperty::Rdp2) && !p.holds(RieszProperty::Rdp1)).then(|| "RDP2 holds, RDP1 fails".into())
}

fn rdp0_vs_rip(e: &Gpea, limits: &Limits) -> Option<String> {
    if !e.is_directed() {
        return None;
    }
    let p = RieszProfile::of(e, limits).ok()?;
    p.observations().into_iter().find(|o| o.starts_with("RDP0"))
}

fn least_ideal_oracle(e: &Gpea, limits: &Limits) -> Option<String> {
    let normal = enumerate_ideals(e, true, limits).ok()?;
    let nontrivial: Vec<&Ideal> = normal.iter().filter(|i| !i.is_trivial()).collect();
    let least = nontrivial.iter().find(|i| nontrivial.iter().all(|j| i.is_subset(j))).map(|i| i.elements());
    let fast = least_nontrivial_normal_ideal(e).map(|i| i.elements());
    (least != fast).then(|| format!("enumeration gives {least:?}, atom closures give {fast:?}"))
}

fn quotients_under_rdp1(e: &Gpea, limits: &Limits) -> Option<String> {
    if !riesz::check(e, RieszProperty::Rdp1, limits).ok()?.holds {
        return None;
    }
    for i in enumerate_ideals(e, true, limits).ok()? {
        if let Err(err) = quotient(e, &i) {
            return Some(format!("quotient by {:?}: {err}", i.elements()));
        }
    }
    None
}

fn state_kernels_normal(e: &Gpea, limits: &Limits) -> Option<String> {
    let top = e.elements().find(|&t| e.elements().all(|x| e.leq(x, t)))?;
    let p = Pea::new(e.clone(), top).ok()?;
    for v in find_states(&p, limits).ok()?.vertices {
        let ideal = Ideal::from_elements(e, &kernel(&v));
        match ideal.map(|i| is_normal(e, &i)) {
            Ok(Ok(true)) => {}
            _ => return Some(format!("kernel {:?} is not a normal ideal", kernel(&v))),
        }
    }
    None
}

fn non_normal_ideal(e: &Gpea, limits: &Limits) -> Option<String> {
    enumerate_ideals(e, false, limits)
        .ok()?
        .into_iter()
        .find(|i| !is_normal(e, i).unwrap_or(true))
        .map(|i| format!("ideal {:?}", i.elements()))
}

fn rip_failure(e: &Gpea, _: &Limits) -> Option<String> {
    let r = riesz::check_rip(e);
    r.counterexample.map(|q| format!("no interpolant for {q:?}"))
}

/// Removes elements one at a time while the property keeps firing.
pub fn shrink(e: &Gpea, property: &Property, limits: &Limits) -> Gpea {
    let mut current = e.clone();
    'outer: loop {
        for x in current.elements().rev() {
            if x == current.zero() {
                continue;
            }
            let keep: Vec<usize> = current.elements().filter(|&y| y != x).collect();
            if let Ok(smaller) = current.restrict(&keep) {
                if (property.check)(&smaller, limits).is_some() {
                    current = smaller;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

/// One property hit, shrunk.
#[derive(Clone, Debug)]
pub struct Finding {
    pub property: &'static str,
    pub kind: PropertyKind,
    pub instance: usize,
    pub witness: String,
    pub fixture: String,
    pub fixture_size: usize,
}

#[derive(Clone, Debug)]
pub struct FuzzOutcome {
    pub instances: Vec<Gpea>,
    /// `(property, kind, hits)` in registry order.
    pub tallies: Vec<(&'static str, PropertyKind, usize)>,
    /// The first hit of each property, shrunk to a fixture.
    pub findings: Vec<Finding>,
}

impl FuzzOutcome {
    pub fn violations(&self) -> usize {
        self.tallies.iter().filter(|t| t.1 == PropertyKind::Asserted).map(|t| t.2).sum()
    }

    pub fn weakly_commutative(&self) -> usize {
        self.instances.iter().filter(|g| g.is_weakly_commutative()).count()
    }

    pub fn distinct(&self) -> usize {
        let mut reps: Vec<&Gpea> = Vec::new();
        for g in &self.instances {
            if !reps.iter().any(|r| r.size() == g.size() && find_isomorphism(r, g).is_some()) {
                reps.push(g);
            }
        }
        reps.len()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instances {} (distinct up to isomorphism {}, weakly commutative {})",
            self.instances.len(),
            self.distinct(),
            self.weakly_commutative()
        );
        for (name, kind, hits) in &self.tallies {
            let tag = match kind {
                PropertyKind::Asserted => "asserted",
                PropertyKind::Observation => "observed",
                PropertyKind::Search => "search",
            };
            let _ = writeln!(out, "  {tag:<8} {name:<22} {hits}");
        }
        out
    }
}

pub fn fuzz(config: &FuzzConfig, limits: &Limits) -> FuzzOutcome {
    let instances = generate(config);
    let registry = registry();
    let mut tallies: Vec<_> = registry.iter().map(|p| (p.name, p.kind, 0)).collect();
    let mut findings = Vec::new();
    for (k, e) in instances.iter().enumerate() {
        for (slot, property) in tallies.iter_mut().zip(&registry) {
            let Some(witness) = (property.check)(e, limits) else { continue };
            slot.2 += 1;
            if slot.2 == 1 && property.kind != PropertyKind::Observation {
                let small = shrink(e, property, limits);
                let witness = (property.check)(&small, limits).unwrap_or(witness);
                let mut text = format!("# {} (seed {}, instance {k}): {witness}\n", property.name, config.seed);
                text.push_str(&emit_algebra(&AlgebraFile::from_gpea(&small)));
                findings.push(Finding {
                    property: property.name,
                    kind: property.kind,
                    instance: k,
                    witness,
                    fixture: text,
                    fixture_size: small.size(),
                });
            }
        }
    }
    FuzzOutcome { instances, tallies, findings }
}
