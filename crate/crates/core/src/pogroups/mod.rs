//! Twisted lexicographic groups `ℤ ⋉ ℤⁿ` and the wreath product `W(ℤ)`,
//! with sampled isomorphism checks against kites over `ℕ`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kite::{IndexRule, Kite, KiteElement, NatChain, Permutation, Sort};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoGroupError {
    #[error("vectors of lengths {0} and {1}")]
    Length(usize, usize),
    #[error("vector length must be positive")]
    Empty,
}

/// `(m, x_0, …, x_{n-1})` in `G_n = ℤ ⋉ ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GnElement {
    pub m: i64,
    pub x: Vec<i64>,
}

impl GnElement {
    pub fn new(m: i64, x: Vec<i64>) -> Self {
        GnElement { m, x }
    }

    pub fn identity(n: usize) -> Self {
        GnElement { m: 0, x: vec![0; n] }
    }

    /// The strong unit `u_n = (1, 0, …, 0)`.
    pub fn unit(n: usize) -> Self {
        GnElement { m: 1, x: vec![0; n] }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Self {
        GnElement {
            m: rng.gen_range(-bound..=bound),
            x: (0..n).map(|_| rng.gen_range(-bound..=bound)).collect(),
        }
    }
}

impl fmt::Display for GnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({}))", self.m, self.x.iter().join(","))
    }
}

fn at(x: &[i64], k: i64) -> i64 {
    x[k.rem_euclid(x.len() as i64) as usize]
}

/// `(m1 + m2, x_k + y_{k+m1})`, subscripts mod `n`.
pub fn gn_mul(a: &GnElement, b: &GnElement) -> Result<GnElement, PoGroupError> {
    if a.x.len() != b.x.len() {
        return Err(PoGroupError::Length(a.x.len(), b.x.len()));
    }
    if a.x.is_empty() {
        return Err(PoGroupError::Empty);
    }
    let x = (0..a.x.len() as i64).map(|k| a.x[k as usize] + at(&b.x, k + a.m)).collect();
    Ok(GnElement { m: a.m + b.m, x })
}

/// `(−m, −a_{k−m})`.
pub fn gn_inv(a: &GnElement) -> GnElement {
    if a.x.is_empty() {
        return GnElement { m: -a.m, x: Vec::new() };
    }
    let x = (0..a.x.len() as i64).map(|k| -at(&a.x, k - a.m)).collect();
    GnElement { m: -a.m, x }
}

/// Lexicographic: `m_a < m_b`, or equal `m` and `x ≤ y` componentwise.
pub fn gn_leq(a: &GnElement, b: &GnElement) -> bool {
    a.m < b.m || (a.m == b.m && a.x.len() == b.x.len() && a.x.iter().zip(&b.x).all(|(p, q)| p <= q))
}

/// `0 ≤ a ≤ u`.
pub fn gn_in_interval(a: &GnElement, u: &GnElement) -> bool {
    gn_leq(&GnElement::identity(a.x.len()), a) && gn_leq(a, u)
}

/// `(m, x)` in `W(ℤ)`; `x` has finite support and stores no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub m: i64,
    x: BTreeMap<i64, i64>,
}

impl WreathElement {
    pub fn new<I: IntoIterator<Item = (i64, i64)>>(m: i64, x: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in x {
            *map.entry(k).or_insert(0) += v;
        }
        map.retain(|_, v| *v != 0);
        WreathElement { m, x: map }
    }

    pub fn identity() -> Self {
        WreathElement { m: 0, x: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        WreathElement { m: 1, x: BTreeMap::new() }
    }

    pub fn get(&self, i: i64) -> i64 {
        self.x.get(&i).copied().unwrap_or(0)
    }

    pub fn support(&self) -> &BTreeMap<i64, i64> {
        &self.x
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, window: i64, bound: i64) -> Self {
        let mut x = Vec::new();
        for i in -window..=window {
            if rng.gen_bool(0.5) {
                x.push((i, rng.gen_range(-bound..=bound)));
            }
        }
        WreathElement::new(rng.gen_range(-bound..=bound), x)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{{{}}})", self.m, self.x.iter().map(|(k, v)| format!("{k}:{v}")).join(","))
    }
}

/// `(m1 + m2, x_i + y_{i+m1})`.
pub fn wreath_mul(a: &WreathElement, b: &WreathElement) -> WreathElement {
    let shifted = b.x.iter().map(|(&k, &v)| (k - a.m, v));
    WreathElement::new(a.m + b.m, a.x.iter().map(|(&k, &v)| (k, v)).chain(shifted))
}

/// `(−m, −a_{i−m})`.
pub fn wreath_inv(a: &WreathElement) -> WreathElement {
    WreathElement::new(-a.m, a.x.iter().map(|(&k, &v)| (k + a.m, -v)))
}

pub fn wreath_leq(a: &WreathElement, b: &WreathElement) -> bool {
    a.m < b.m || (a.m == b.m && a.x.keys().chain(b.x.keys()).all(|&k| a.get(k) <= b.get(k)))
}

pub fn wreath_in_interval(a: &WreathElement, u: &WreathElement) -> bool {
    wreath_leq(&WreathElement::identity(), a) && wreath_leq(a, u)
}

/// Outcome of [`example_iso_spotcheck`] and its wreath variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSpotcheck {
    /// The coordinate map `π` used in `UPPER⟨a⟩ ↦ u · (0, a∘π)⁻¹`.
    pub pi: String,
    pub seed: u64,
    pub pairs: usize,
    pub defined_pairs: usize,
    pub box_checked: usize,
    pub holds: bool,
    pub witness: Option<String>,
    /// Every candidate tried, with its verdict.
    pub tried: Vec<(String, bool)>,
}

/// Maps a kite element into `Γ(G_n, u_n)` for the coordinate map `pi`.
pub fn gn_image(k: &Kite<NatChain>, x: &KiteElement<u64>, pi: &Permutation) -> GnElement {
    let n = pi.len();
    let coords: Vec<i64> = (0..n as i64).map(|i| k.coord(x, i) as i64).collect();
    match x.sort() {
        Sort::Lower => GnElement { m: 0, x: coords },
        Sort::Upper => {
            let b = GnElement { m: 0, x: (0..n).map(|i| coords[pi.apply(i)]).collect() };
            gn_mul(&GnElement::unit(n), &gn_inv(&b)).expect("same length")
        }
    }
}

/// Checks `φ(x + y) = φ(x) * φ(y)` and definedness agreement on one pair.
fn check_gn_pair(
    k: &Kite<NatChain>,
    pi: &Permutation,
    x: &KiteElement<u64>,
    y: &KiteElement<u64>,
) -> Result<bool, String> {
    let u = GnElement::unit(pi.len());
    let product = gn_mul(&gn_image(k, x, pi), &gn_image(k, y, pi)).expect("same length");
    match k.add(x, y).expect("kite element") {
        Some(s) if gn_image(k, &s, pi) == product && gn_in_interval(&product, &u) => Ok(true),
        None if !gn_in_interval(&product, &u) => Ok(false),
        _ => Err(format!("{} + {}", k.format(x), k.format(y))),
    }
}

/// Injectivity and onto-ness between the kite box `[0, bound]^n` of each
/// sort and the corresponding box of `Γ(G_n, u_n)`.
fn check_gn_box(k: &Kite<NatChain>, pi: &Permutation, bound: u64) -> Result<usize, String> {
    let n = pi.len();
    let u = GnElement::unit(n);
    let tuples: Vec<Vec<u64>> = (0..n).map(|_| 0..=bound).multi_cartesian_product().collect();
    let mut images = std::collections::HashSet::new();
    for sort in [Sort::Lower, Sort::Upper] {
        for t in &tuples {
            let x = k.dense(sort, t.clone()).expect("kite element");
            let g = gn_image(k, &x, pi);
            if !gn_in_interval(&g, &u) || !images.insert(g) {
                return Err(format!("box element {} maps badly", k.format(&x)));
            }
        }
    }
    for t in &tuples {
        let f: Vec<i64> = t.iter().map(|&v| v as i64).collect();
        let lower = GnElement { m: 0, x: f.clone() };
        let upper = GnElement { m: 1, x: f.iter().map(|v| -v).collect() };
        for g in [lower, upper] {
            if !images.contains(&g) {
                return Err(format!("interval element {g} has no preimage in the box"));
            }
        }
    }
    Ok(images.len())
}

/// Sampled check that the kite over `ℕ` with `λ = id`, `ρ(i) = i − 1
/// (mod n)` is isomorphic to `Γ(G_n, u_n)` under `LOWER⟨f⟩ ↦ (0, f)`,
/// `UPPER⟨a⟩ ↦ u_n · (0, a∘π)⁻¹`, with `π` found by search over all
/// coordinate permutations.
pub fn example_iso_spotcheck(n: usize, pairs: usize, bound: u64, seed: u64) -> IsoSpotcheck {
    let candidates = if n <= 5 {
        Permutation::all(n)
    } else {
        (0..n as i64).map(|s| Permutation::shift(n, s)).collect()
    };
    let mut tried = Vec::new();
    let mut last = None;
    for pi in candidates {
        let report = spotcheck_gn_with(n, &pi, pairs, bound, seed);
        tried.push((report.pi.clone(), report.holds));
        if report.holds {
            return IsoSpotcheck { tried, ..report };
        }
        last = Some(report);
    }
    let mut report = last.expect("at least one candidate");
    report.pi = "none".into();
    report.witness = Some(format!(
        "no coordinate map among {} candidates gives a homomorphism; last failure: {}",
        tried.len(),
        report.witness.unwrap_or_default()
    ));
    IsoSpotcheck { tried, ..report }
}

/// [`example_iso_spotcheck`] for one fixed `π`.
pub fn spotcheck_gn_with(n: usize, pi: &Permutation, pairs: usize, bound: u64, seed: u64) -> IsoSpotcheck {
    let k = Kite::new(NatChain, Permutation::identity(n), Permutation::cycle_down(n)).expect("total base");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IsoSpotcheck {
        pi: pi.to_string(),
        seed,
        pairs: 0,
        defined_pairs: 0,
        box_checked: 0,
        holds: false,
        witness: None,
        tried: Vec::new(),
    };
    match check_gn_box(&k, pi, 3) {
        Ok(count) => report.box_checked = count,
        Err(w) => {
            report.witness = Some(w);
            return report;
        }
    }
    for _ in 0..pairs {
        let x = k.sample_any(&mut rng, bound);
        let y = k.sample_any(&mut rng, bound);
        report.pairs += 1;
        match check_gn_pair(&k, pi, &x, &y) {
            Ok(defined) => report.defined_pairs += usize::from(defined),
            Err(w) => {
                report.witness = Some(w);
                return report;
            }
        }
    }
    report.holds = true;
    report
}

/// Maps an element of the kite over `ℕ` with `I = ℤ` into `Γ(W(ℤ), u)`,
/// shifting upper coordinates by `shift`.
pub fn wreath_image(x: &KiteElement<u64>, shift: i64) -> WreathElement {
    let coords = x.support().iter().map(|(&i, &v)| (i, v as i64));
    match x.sort() {
        Sort::Lower => WreathElement::new(0, coords),
        Sort::Upper => {
            // b_i = a_{i + shift}
            let b = WreathElement::new(0, coords.map(|(i, v)| (i - shift, v)));
            wreath_mul(&WreathElement::unit(), &wreath_inv(&b))
        }
    }
}

/// The `W(ℤ)` analogue of [`example_iso_spotcheck`] for `λ = id`,
/// `ρ(i) = i − 1` on `ℤ`, searching shifts `π(i) = i + s`, `|s| ≤ 3`.
pub fn wreath_iso_spotcheck(pairs: usize, bound: u64, seed: u64) -> IsoSpotcheck {
    let k = Kite::over_integers(NatChain, IndexRule::Shift(0), IndexRule::Shift(-1)).expect("total base");
    let u = WreathElement::unit();
    let mut tried = Vec::new();
    let mut last = None;
    for shift in -3..=3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = IsoSpotcheck {
            pi: format!("i{shift:+}"),
            seed,
            pairs: 0,
            defined_pairs: 0,
            box_checked: 0,
            holds: true,
            witness: None,
            tried: Vec::new(),
        };
        for _ in 0..pairs {
            let x = k.sample_any(&mut rng, bound);
            let y = k.sample_any(&mut rng, bound);
            report.pairs += 1;
            let product = wreath_mul(&wreath_image(&x, shift), &wreath_image(&y, shift));
            let ok = match k.add(&x, &y).expect("kite element") {
                Some(s) => {
                    report.defined_pairs += 1;
                    wreath_image(&s, shift) == product && wreath_in_interval(&product, &u)
                }
                None => !wreath_in_interval(&product, &u),
            };
            if !ok {
                report.holds = false;
                report.witness = Some(format!("{} + {}", k.format(&x), k.format(&y)));
                break;
            }
        }
        tried.push((report.pi.clone(), report.holds));
        if report.holds {
            return IsoSpotcheck { tried, ..report };
        }
        last = Some(report);
    }
    let report = last.expect("candidates");
    IsoSpotcheck { tried, holds: false, ..report }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_product_example() {
        let a = GnElement::new(1, vec![1, 0, 0]);
        let b = GnElement::new(0, vec![5, 7, 9]);
        let p = gn_mul(&a, &b).unwrap();
        assert_eq!(p, GnElement::new(1, vec![8, 9, 5]));
        assert_eq!(gn_inv(&p), GnElement::new(-1, vec![-5, -8, -9]));
        assert_eq!(gn_mul(&p, &gn_inv(&p)).unwrap(), GnElement::identity(3));
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            gn_mul(&GnElement::identity(2), &GnElement::identity(3)),
            Err(PoGroupError::Length(2, 3))
        );
    }

    #[test]
    fn lex_order_examples() {
        let zero = GnElement::identity(3);
        assert!(gn_leq(&zero, &GnElement::new(0, vec![0, 0, 1])));
        assert!(!gn_leq(&zero, &GnElement::new(0, vec![-1, 0, 0])));
        assert!(gn_in_interval(&GnElement::new(1, vec![-5, 0, 0]), &GnElement::unit(3)));
    }

    #[test]
    fn wreath_product_example() {
        let a = WreathElement::new(1, [(0, 1)]);
        let b = WreathElement::new(0, [(1, 7)]);
        assert_eq!(wreath_mul(&a, &b), WreathElement::new(1, [(0, 8)]));
        assert_eq!(wreath_mul(&a, &wreath_inv(&a)), WreathElement::identity());
    }

    #[test]
    fn wrong_pi_fails_loudly() {
        let swap = Permutation::from_image(vec![1, 0, 2]).unwrap();
        let r = spotcheck_gn_with(3, &swap, 500, 20, 7);
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }

    #[test]
    fn search_finds_a_map() {
        let r = example_iso_spotcheck(2, 300, 10, 1);
        assert!(r.holds, "{r:?}");
        assert!(wreath_iso_spotcheck(300, 10, 1).holds);
    }
}
