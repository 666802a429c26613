//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kitelab::algebra::{catalog, find_isomorphism, verify_pea_table};
use kitelab::connectivity::{subdirect_decompose, irreducibility_check, ConnectivityError};
use kitelab::ideals::{
    coordinate_projection, enumerate_ideals, enumerate_ideals_within, is_maximal, is_normal, kite_lower_ideal,
    least_nontrivial_normal_ideal, Ideal,
};
use kitelab::kite::{check_perfect, unitization};
use kitelab::pogroups::{example_iso_spotcheck, gn_inv, gn_leq, gn_mul, GnElement};
use kitelab::riesz::{self, kite_rdp_decompose, RieszError, RieszProperty};
use kitelab::states::{find_states, is_state, kernel, rational, Rational};
use kitelab::{ExplicitKite, Gpea, Kite, KiteElement, Limits, NatChain, Pea, Permutation, Sort};
use kitelab_cli::fuzz::{generate, FuzzConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

struct Entry {
    name: String,
    kite: ExplicitKite,
    equal_maps: bool,
}

struct Corpus {
    entries: Vec<Entry>,
    build_time: Duration,
}

/// Riesz and ideal work in this run uses larger caps than the defaults.
fn limits() -> Limits {
    Limits { riesz_carrier: 72, ideal_carrier: 256, ..Limits::default() }
}

fn named_bases() -> Vec<(String, Gpea)> {
    let mut out: Vec<(String, Gpea)> = (2..=6).map(|k| (format!("C{k}"), catalog::chain(k))).collect();
    out.push(("C2xC2".into(), catalog::product(&catalog::chain(2), &catalog::chain(2))));
    out.push(("MO2".into(), catalog::mo2().gpea().clone()));
    out.push(("C2xC3".into(), catalog::product(&catalog::chain(2), &catalog::chain(3))));
    out
}

/// Distinct nontrivial commutative GPEAs from the seeded generator.
fn random_bases(count: usize) -> Vec<(String, Gpea)> {
    let config =
        FuzzConfig { min_size: 2, max_size: 6, density: 0.5, seed: SEED, commutative: true, count: count * 20 };
    let mut kept: Vec<Gpea> = named_bases().into_iter().map(|(_, g)| g).collect();
    let mut out = Vec::new();
    for g in generate(&config) {
        if out.len() == count {
            break;
        }
        if g.is_trivial() || kept.iter().any(|h| find_isomorphism(h, &g).is_some()) {
            continue;
        }
        kept.push(g.clone());
        out.push((format!("random#{}(size {})", out.len(), g.size()), g));
    }
    out
}

fn build_corpus() -> Corpus {
    let start = Instant::now();
    let limits = Limits::default();
    let mut entries = Vec::new();
    let mut bases = named_bases();
    bases.extend(random_bases(20));
    for (name, base) in &bases {
        for n in 1..=3 {
            for p in Permutation::all(n) {
                let kite = ExplicitKite::build(base, p.clone(), p.clone(), &limits).expect("λ = ρ over a commutative base");
                entries.push(Entry { name: format!("{name} n={n} λ=ρ={p}"), kite, equal_maps: true });
            }
        }
    }
    for n in 2..=3 {
        for l in Permutation::all(n) {
            for r in Permutation::all(n) {
                if l != r {
                    let kite = ExplicitKite::build(&catalog::trivial(), l.clone(), r.clone(), &limits).unwrap();
                    entries.push(Entry { name: format!("trivial n={n} λ={l} ρ={r}"), kite, equal_maps: false });
                }
            }
        }
    }
    Corpus { entries, build_time: start.elapsed() }
}

fn c1_well_formed(c: &Corpus) -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for e in &c.entries {
        let p = e.kite.pea();
        let report = verify_pea_table(p.gpea().table(), p.zero(), p.top()).unwrap();
        if !report.passed() {
            bad.push(format!("{}: {}", e.name, report.violations[0]));
        }
    }
    let elapsed = c.build_time + start.elapsed();
    let largest = c.entries.iter().map(|e| e.kite.size()).max().unwrap_or(0);
    verdict(
        c.entries.len() >= 200 && bad.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{} kites (largest {largest} elements), {} with violations, {:.1} s{}",
            c.entries.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn c2_negations(c: &Corpus) -> Verdict {
    let mut checked = 0;
    for e in &c.entries {
        let p = e.kite.pea();
        for x in 0..p.size() {
            let left: Vec<usize> = (0..p.size()).filter(|&d| p.add(d, x) == Some(p.top())).collect();
            let right: Vec<usize> = (0..p.size()).filter(|&f| p.add(x, f) == Some(p.top())).collect();
            let (m, t) = e.kite.formula_negations(x);
            if left != [m] || right != [t] {
                return verdict(
                    false,
                    format!("{}: element {} formula ({m}, {t}) search ({left:?}, {right:?})", e.name, e.kite.label(x)),
                );
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} elements, formulas equal the unique searched witnesses"))
}

fn c3_symmetry(c: &Corpus) -> Verdict {
    let equal: Vec<&Entry> = c.entries.iter().filter(|e| e.equal_maps).collect();
    let failing: Vec<&str> =
        equal.iter().filter(|e| !e.kite.pea().is_symmetric()).map(|e| e.name.as_str()).collect();
    let k = Kite::new(NatChain, Permutation::identity(2), Permutation::from_image(vec![1, 0]).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let probe = k.symmetry_probe(&mut rng, 1000, 9);
    let witness = probe.witness.as_ref().map(|w| {
        let (m, t) = k.negations(w);
        format!("{}⁻ = {} ≠ {} = {}~", k.format(w), k.format(&m), k.format(&t), k.format(w))
    });
    let confirmed = probe.witness.as_ref().is_some_and(|w| {
        let (m, t) = k.negations(w);
        m != t && k.add(&m, w).unwrap() == Some(k.one()) && k.add(w, &t).unwrap() == Some(k.one())
    });
    verdict(
        failing.is_empty() && confirmed,
        format!(
            "{} λ=ρ kites symmetric, {} not; ℕ swap kite: {}",
            equal.len() - failing.len(),
            failing.len(),
            witness.unwrap_or_else(|| "no witness".into())
        ),
    )
}

const TRANSFER: [RieszProperty; 4] = [RieszProperty::Rdp0, RieszProperty::Rdp, RieszProperty::Rdp1, RieszProperty::Rdp2];

fn c4_transfer(c: &Corpus) -> Verdict {
    let limits = limits();
    let (mut checked, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    let mut kite_holds = 0;
    for e in &c.entries {
        if e.kite.size() > limits.riesz_carrier {
            skipped += 1;
            continue;
        }
        checked += 1;
        for p in TRANSFER {
            let on_kite = riesz::check(e.kite.gpea(), p, &limits).unwrap().holds;
            let on_base = riesz::check(e.kite.base(), p, &limits).unwrap().holds;
            kite_holds += on_kite as usize;
            if on_kite && !on_base {
                bad.push(format!("{} {p}", e.name));
            }
        }
    }
    verdict(
        bad.is_empty() && checked > 0,
        format!(
            "{checked} kites up to {} elements checked ({kite_holds} property passes), {skipped} larger skipped, {} transfer failures{}",
            limits.riesz_carrier,
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn c5_decomposition() -> Verdict {
    const PER_CASE: usize = 10_000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = 0;
    for n in 1..=3 {
        let k = Kite::new(NatChain, Permutation::identity(n), Permutation::cycle_down(n)).unwrap();
        let vec = |rng: &mut ChaCha8Rng| (0..n).map(|_| rng.gen_range(0..50u64)).collect::<Vec<_>>();
        let l_inv = |i: usize| k.lambda().apply_inverse(i as i64) as usize;
        let r_inv = |i: usize| k.rho().apply_inverse(i as i64) as usize;
        for case in 0..4 {
            for _ in 0..PER_CASE {
                let (c, f, g) = (vec(&mut rng), vec(&mut rng), vec(&mut rng));
                let (a, b): ([KiteElement<u64>; 2], [KiteElement<u64>; 2]) = match case {
                    0 => {
                        let s: Vec<u64> = f.iter().zip(&c).map(|(x, y)| x + y).collect();
                        let g1: Vec<u64> = g.iter().zip(&s).map(|(g, s)| g % (s + 1)).collect();
                        let g2: Vec<u64> = s.iter().zip(&g1).map(|(s, g)| s - g).collect();
                        ([k.lower(f).unwrap(), k.lower(c).unwrap()], [k.lower(g1).unwrap(), k.lower(g2).unwrap()])
                    }
                    1 => {
                        let a: Vec<u64> = (0..n).map(|i| c[i] + f[r_inv(i)]).collect();
                        let b: Vec<u64> = (0..n).map(|i| c[i] + g[r_inv(i)]).collect();
                        ([k.upper(a).unwrap(), k.lower(f).unwrap()], [k.upper(b).unwrap(), k.lower(g).unwrap()])
                    }
                    2 => {
                        let a: Vec<u64> = (0..n).map(|i| c[i] + f[l_inv(i)]).collect();
                        let b: Vec<u64> = (0..n).map(|i| c[i] + g[l_inv(i)]).collect();
                        ([k.lower(f).unwrap(), k.upper(a).unwrap()], [k.lower(g).unwrap(), k.upper(b).unwrap()])
                    }
                    _ => {
                        let a: Vec<u64> = (0..n).map(|i| c[i] + f[r_inv(i)]).collect();
                        let b: Vec<u64> = (0..n).map(|i| c[i] + g[l_inv(i)]).collect();
                        ([k.upper(a).unwrap(), k.lower(f).unwrap()], [k.lower(g).unwrap(), k.upper(b).unwrap()])
                    }
                };
                let (a, b) = ([&a[0], &a[1]], [&b[0], &b[1]]);
                let sum = k.add(a[0], a[1]).unwrap();
                if sum.is_none() || sum != k.add(b[0], b[1]).unwrap() {
                    return verdict(false, format!("n={n} case {case}: generated quadruple does not match"));
                }
                for p in [RieszProperty::Rdp, RieszProperty::Rdp1, RieszProperty::Rdp2] {
                    let ok = kite_rdp_decompose(&k, a, b, p)
                        .is_ok_and(|t| t.certifies(|x, y| k.add(x, y).unwrap(), a, b));
                    if !ok {
                        let q = [a[0], a[1], b[0], b[1]].map(|x| k.format(x));
                        return verdict(false, format!("n={n} case {case} {p}: no valid table for {q:?}"));
                    }
                }
                total += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        elapsed < Duration::from_secs(30),
        format!(
            "{total} quadruples ({PER_CASE} per case per n, n = 1..3), all tables revalidate at RDP, RDP1 and RDP2, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn rdp1(k: &ExplicitKite, limits: &Limits) -> Option<bool> {
    match riesz::check(k.gpea(), RieszProperty::Rdp1, limits) {
        Ok(r) => Some(r.holds),
        Err(RieszError::TooLarge { .. }) => None,
    }
}

fn c6_ideals(c: &Corpus) -> Verdict {
    let limits = limits();
    let mut powers = 0;
    let mut projections = 0;
    let (mut confirmed_bad, mut archived) = (Vec::new(), Vec::new());
    let mut skipped = 0;
    for e in &c.entries {
        let k = &e.kite;
        let g = k.gpea();
        for h in enumerate_ideals(k.base(), true, &limits).unwrap() {
            let hi = kite_lower_ideal(k, &h).unwrap();
            if !is_normal(g, &hi).unwrap() {
                return verdict(false, format!("{}: H^I not normal for H = {:?}", e.name, h.elements()));
            }
            powers += 1;
        }
        let lower = kite_lower_ideal(k, &Ideal::whole(k.base())).unwrap();
        if !is_maximal(g, &lower) {
            return verdict(false, format!("{}: E^I is not maximal", e.name));
        }
        if lower.len() > 32 {
            skipped += 1;
            continue;
        }
        let has_rdp1 = rdp1(k, &limits);
        for j in enumerate_ideals_within(g, &lower, true, &limits).unwrap() {
            for coord in 0..k.arity() {
                let p = coordinate_projection(k, &j, coord);
                projections += 1;
                let normal = Ideal::new(k.base(), p.clone()).is_ok_and(|i| is_normal(k.base(), &i).unwrap());
                if !normal {
                    let msg = format!("{} coordinate {coord} of {:?}", e.name, j.elements());
                    if has_rdp1 == Some(true) {
                        confirmed_bad.push(msg);
                    } else {
                        archived.push(msg);
                    }
                }
            }
        }
    }
    verdict(
        confirmed_bad.is_empty(),
        format!(
            "{powers} lifted normal ideals normal, E^I maximal on all {} kites; {projections} projections, {} non-normal under RDP1, {} archived without RDP1, {skipped} kites with E^I above 32 elements not enumerated{}",
            c.entries.len(),
            confirmed_bad.len(),
            archived.len(),
            confirmed_bad.first().or(archived.first()).map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn c7_irreducibility(c: &Corpus) -> Verdict {
    let limits = limits();
    let (mut agree, mut skipped) = (0, 0);
    let mut disagree = Vec::new();
    for e in &c.entries {
        match irreducibility_check(&e.kite, &limits) {
            Ok(r) if r.predicted == r.observed => agree += 1,
            Ok(r) => disagree.push(format!("{} (predicted {}, observed {})", e.name, r.predicted, r.observed)),
            Err(ConnectivityError::Hypothesis(_)) => skipped += 1,
            Err(ConnectivityError::Riesz(_)) => skipped += 1,
            Err(err) => return verdict(false, format!("{}: {err}", e.name)),
        }
    }
    let k = ExplicitKite::build(&catalog::chain(2), Permutation::identity(2), Permutation::identity(2), &limits).unwrap();
    let g = k.gpea();
    let no_least = least_nontrivial_normal_ideal(g).is_none();
    let ideal_on = |coord: usize| {
        let members: Vec<usize> = (0..k.block())
            .filter(|&x| k.tuple(x).iter().enumerate().all(|(i, &d)| i == coord || d == 0))
            .collect();
        Ideal::from_elements(g, &members).unwrap()
    };
    let (i0, i1) = (ideal_on(0), ideal_on(1));
    let components_ok = !i0.is_trivial()
        && !i1.is_trivial()
        && is_normal(g, &i0).unwrap()
        && is_normal(g, &i1).unwrap()
        && i0.intersection(&i1).is_trivial();
    verdict(
        disagree.is_empty() && no_least && components_ok,
        format!(
            "{agree} kites agree, {} disagree, {skipped} outside the confirmed hypotheses; C2 n=2: no least nontrivial normal ideal {no_least}, component ideals {:?} and {:?} normal with trivial meet {components_ok}{}",
            disagree.len(),
            i0.elements(),
            i1.elements(),
            if disagree.is_empty() { String::new() } else { format!("; disagreements: {}", disagree.join(", ")) }
        ),
    )
}

fn c8_subdirect() -> Verdict {
    let limits = Limits::default();
    let k = ExplicitKite::build(&catalog::chain(2), Permutation::identity(2), Permutation::identity(2), &limits).unwrap();
    let d = subdirect_decompose(&k, &limits).unwrap();
    let four = catalog::boolean4();
    let components_ok = d.components.len() == 2
        && d.components.iter().all(|c| find_isomorphism(c.kite.gpea(), four.gpea()).is_some());
    let images: BTreeSet<&Vec<usize>> = d.embedding.iter().collect();
    let injective = images.len() == k.size();
    let surjective = (0..d.components.len())
        .all(|c| d.embedding.iter().map(|v| v[c]).collect::<BTreeSet<_>>().len() == d.components[c].kite.size());
    let mut pairs = 0;
    let mut preserved = true;
    for x in 0..k.size() {
        for y in 0..k.size() {
            pairs += 1;
            let parts: Vec<Option<usize>> = d
                .components
                .iter()
                .enumerate()
                .map(|(c, comp)| comp.kite.gpea().add(d.embedding[x][c], d.embedding[y][c]))
                .collect();
            let expected = match k.gpea().add(x, y) {
                Some(z) => parts.iter().enumerate().all(|(c, p)| *p == Some(d.embedding[z][c])),
                None => parts.iter().any(Option::is_none),
            };
            preserved &= expected;
        }
    }
    verdict(
        components_ok && injective && surjective && preserved && pairs == 64,
        format!(
            "components ≅ 2² {components_ok}, injective {injective}, projections onto {surjective}, + preserved and reflected on {pairs} pairs {preserved}"
        ),
    )
}

fn c9_groups() -> Verdict {
    let product = gn_mul(&GnElement::new(1, vec![1, 0, 0]), &GnElement::new(0, vec![5, 7, 9])).unwrap();
    let worked = product == GnElement::new(1, vec![8, 9, 5]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut triples = 0;
    for n in [2, 3, 5] {
        let e = GnElement::identity(n);
        for _ in 0..1000 {
            let [a, b, c] = [0; 3].map(|_| GnElement::random(&mut rng, n, 20));
            let ab_c = gn_mul(&gn_mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = gn_mul(&a, &gn_mul(&b, &c).unwrap()).unwrap();
            let laws = ab_c == a_bc
                && gn_mul(&a, &e).unwrap() == a
                && gn_mul(&e, &a).unwrap() == a
                && gn_mul(&a, &gn_inv(&a)).unwrap() == e
                && gn_mul(&gn_inv(&a), &a).unwrap() == e;
            let invariant = !gn_leq(&a, &b)
                || (gn_leq(&gn_mul(&c, &a).unwrap(), &gn_mul(&c, &b).unwrap())
                    && gn_leq(&gn_mul(&a, &c).unwrap(), &gn_mul(&b, &c).unwrap()));
            if !laws || !invariant {
                return verdict(false, format!("n={n}: group laws fail at {a:?}, {b:?}, {c:?}"));
            }
            triples += 1;
        }
    }
    let mut spot = Vec::new();
    let mut iso_ok = true;
    for n in [1, 3] {
        let r = example_iso_spotcheck(n, 10_000, 50, SEED);
        iso_ok &= r.holds;
        spot.push(format!(
            "n={n} π={} {} ({} defined pairs{})",
            r.pi,
            if r.holds { "holds" } else { "FAILS" },
            r.defined_pairs,
            r.witness.as_ref().map(|w| format!(", witness {w}, tried {:?}", r.tried)).unwrap_or_default()
        ));
    }
    verdict(
        worked && iso_ok,
        format!(
            "(1,(1,0,0))*(0,(5,7,9)) = ({},{:?}); group laws on {triples} triples; iso {}",
            product.m,
            product.x,
            spot.join("; ")
        ),
    )
}

fn designated_state(k: &ExplicitKite) -> Vec<Rational> {
    (0..k.size()).map(|x| rational((k.sort_of(x) == Sort::Upper) as i64, 1)).collect()
}

fn c10_perfect(c: &Corpus) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        for p in [Permutation::identity(n), Permutation::cycle_down(n)] {
            let k = Kite::new(NatChain, p.clone(), p.clone()).unwrap();
            let perfect = k.perfect_probe(&mut rng, 1000, 20);
            let state = k.designated_state_probe(&mut rng, 1000, 20);
            ok &= perfect.holds && state.holds;
            if !(perfect.holds && state.holds) {
                lines.push(format!("n={n} λ=ρ={p}: perfect {:?} state {:?}", perfect.witness, state.witness));
            }
        }
    }
    let two2 = unitization(&catalog::chain(2), &Limits::default()).unwrap();
    let not_perfect = check_perfect(two2.pea()).is_none();
    let mut explicit_states = 0;
    for e in &c.entries {
        if is_state(e.kite.pea(), &designated_state(&e.kite)).unwrap().is_err() {
            return verdict(false, format!("{}: designated map is not a state", e.name));
        }
        explicit_states += 1;
    }
    verdict(
        ok && not_perfect,
        format!(
            "ℕ kites with λ=ρ (n = 1..3, identity and cycle): perfect and designated state additive on 1000 probes each {ok}; 2² not perfect {not_perfect}; designated map a state on {explicit_states} explicit kites{}",
            lines.first().map(|l| format!("; {l}")).unwrap_or_default()
        ),
    )
}

fn c11_states(c: &Corpus) -> Verdict {
    let limits = Limits::default();
    let two2 = unitization(&catalog::chain(2), &limits).unwrap();
    let p = two2.pea();
    let space = find_states(p, &limits).unwrap();
    // On a four-element Boolean algebra the extreme states are the two
    // point masses at its atoms.
    let expected: BTreeSet<Vec<Rational>> = p
        .gpea()
        .atoms()
        .into_iter()
        .map(|a| (0..p.size()).map(|x| rational(p.gpea().leq(a, x) as i64, 1)).collect())
        .collect();
    let found: BTreeSet<Vec<Rational>> = space.vertices.iter().cloned().collect();
    let exact = space.vertices.len() == 2 && found == expected;

    let mut peas: Vec<(String, Pea)> = vec![("MO2".into(), catalog::mo2()), ("2x2".into(), catalog::boolean4())];
    peas.extend((2..=6).map(|k| (format!("C{k}"), catalog::chain_pea(k))));
    peas.push(("C2xC3".into(), catalog::product_pea(&catalog::chain_pea(2), &catalog::chain_pea(3))));
    peas.extend(
        c.entries
            .iter()
            .filter(|e| e.kite.size() <= limits.state_carrier)
            .map(|e| (e.name.clone(), e.kite.pea().clone())),
    );
    let mut kernels = 0;
    for (name, p) in &peas {
        let space = find_states(p, &limits).unwrap();
        for v in &space.vertices {
            if is_state(p, v).unwrap().is_err() {
                return verdict(false, format!("{name}: vertex is not a state"));
            }
            let normal = Ideal::from_elements(p.gpea(), &kernel(v)).is_ok_and(|i| is_normal(p.gpea(), &i).unwrap());
            if !normal {
                return verdict(false, format!("{name}: kernel {:?} is not a normal ideal", kernel(v)));
            }
            kernels += 1;
        }
    }
    verdict(
        exact,
        format!(
            "2² has {} extreme states, equal to the atom point masses {exact}; {kernels} kernels over {} PEAs all normal",
            space.vertices.len(),
            peas.len()
        ),
    )
}

fn c12_determinism() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let args = ["kitelab", "report", dir.to_str().unwrap(), "--seed", "42"];
    let first = kitelab_cli::run(args);
    let second = kitelab_cli::run(args);
    verdict(
        first.code == 0 && first.text == second.text,
        format!("two report runs, {} bytes each, identical {}", first.text.len(), first.text == second.text),
    )
}

fn main() -> ExitCode {
    let corpus = build_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("kite well-formedness", Box::new(|| c1_well_formed(&corpus))),
        ("negation formulas", Box::new(|| c2_negations(&corpus))),
        ("symmetry", Box::new(|| c3_symmetry(&corpus))),
        ("RDP transfer to the base", Box::new(|| c4_transfer(&corpus))),
        ("constructive decomposition on the ℕ kite", Box::new(c5_decomposition)),
        ("ideal theory", Box::new(|| c6_ideals(&corpus))),
        ("irreducibility criterion", Box::new(|| c7_irreducibility(&corpus))),
        ("subdirect decomposition", Box::new(c8_subdirect)),
        ("lexicographic group arithmetic", Box::new(c9_groups)),
        ("perfectness", Box::new(|| c10_perfect(&corpus))),
        ("states", Box::new(|| c11_states(&corpus))),
        ("report determinism", Box::new(c12_determinism)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| verdict(false, format!("panicked: {:?}", e.downcast_ref::<String>())));
        failed += !v.pass as usize;
        println!(
            "{} {:>2} {title}: {} [{:.1} s]",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
