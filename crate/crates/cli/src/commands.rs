//! One function per subcommand. Each returns an [`Outcome`]; `Err` is a
//! usage or structural error and maps to exit code 2.

use std::fs;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use kitelab::algebra::{verify_pea_table, Predicates};
use kitelab::connectivity::{connected_components, subdirect_decompose, irreducibility_check, ConnectivityError};
use kitelab::ideals::{
    congruence_from_normal_ideal, enumerate_ideals, is_maximal, is_normal, is_subdirectly_irreducible,
    least_nontrivial_normal_ideal, normal_closure, quotient, Ideal, IdealError,
};
use kitelab::kite::{check_perfect, KiteBase, RieszBase};
use kitelab::pogroups::{example_iso_spotcheck, wreath_iso_spotcheck, IsoSpotcheck};
use kitelab::riesz::{self, kite_rdp_decompose, RieszProperty, Witness};
use kitelab::states::{find_states, kernel, Rational};
use kitelab::{ExplicitKite, Gpea, Kite, KiteElement, Limits, NatChain, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{emit_algebra, load, parse_algebra, Algebra, AlgebraFile};
use crate::fuzz::{fuzz, FuzzConfig, PropertyKind};
use crate::output::Outcome;
use crate::spec::{parse_elements, parse_kite_element, parse_permutation};

pub type CommandResult = Result<Outcome, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_path(path: &Path) -> Result<(AlgebraFile, Algebra), String> {
    load(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn set_of(e: &Gpea, xs: impl IntoIterator<Item = usize>) -> String {
    format!("{{{}}}", xs.into_iter().map(|x| e.label(x)).join(", "))
}

fn labels_json(e: &Gpea, xs: impl IntoIterator<Item = usize>) -> Value {
    xs.into_iter().map(|x| e.label(x)).collect::<Vec<_>>().into()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn predicates(out: &mut Outcome, e: &Gpea) {
    let p = Predicates::of(e);
    out.line(format!(
        "weakly commutative {}, commutative {}, total {}, directed {}",
        yes(p.weakly_commutative),
        yes(p.commutative),
        yes(p.total),
        yes(p.directed)
    ));
    out.set(
        "predicates",
        json!({
            "weakly_commutative": p.weakly_commutative,
            "commutative": p.commutative,
            "total": p.total,
            "directed": p.directed,
        }),
    );
}

pub fn verify(path: &Path) -> CommandResult {
    let mut out = Outcome::new("verify");
    let file = parse_algebra(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    out.set("file", path.display().to_string());
    out.set("kind", file.kind.to_string());
    out.set("size", file.size());
    let top = file.top.map(|t| format!(", top {t}")).unwrap_or_default();
    out.line(format!("{} of size {}, zero {}{top}", file.kind, file.size(), file.zero));
    let report = file.verify();
    out.set("violations", report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    if !report.passed() {
        out.fail();
        out.line(format!("axioms: {} violation(s)", report.violations.len()));
        for v in report.violations.iter().take(10) {
            out.line(format!("  {v}"));
        }
        if report.violations.len() > 10 {
            out.line(format!("  ... {} more", report.violations.len() - 10));
        }
        return Ok(out);
    }
    let algebra = file.check().map_err(|e| e.to_string())?;
    out.line("axioms: all hold");
    predicates(&mut out, algebra.gpea());
    if let Some(p) = algebra.pea() {
        match p.asymmetry_witness() {
            None => out.line("symmetric: yes"),
            Some(a) => out.line(format!("symmetric: no, {a}⁻ = {} but {a}~ = {}", p.minus(a), p.tilde(a))),
        }
        out.set("symmetric", p.is_symmetric());
    }
    Ok(out)
}

pub struct KiteSpec {
    pub algebra: String,
    pub n: Option<usize>,
    pub lambda: Option<String>,
    pub rho: Option<String>,
}

impl KiteSpec {
    fn is_nat(&self) -> bool {
        self.algebra == "nat"
    }

    /// `λ, ρ` from the flags, falling back to `perm` lines, then identity.
    fn permutations(&self, file: Option<&AlgebraFile>) -> Result<(Permutation, Permutation), String> {
        let from_file = file.and_then(|f| f.lambda.clone().zip(f.rho.clone()));
        let n = self
            .n
            .or_else(|| from_file.as_ref().map(|p| p.0.len()))
            .unwrap_or(1);
        if n == 0 {
            return Err("the index set must be nonempty".into());
        }
        let pick = |flag: &Option<String>, fallback: Option<&Permutation>| match (flag, fallback) {
            (Some(s), _) => parse_permutation(s, n),
            (None, Some(p)) if p.len() == n => Ok(p.clone()),
            (None, Some(p)) => Err(format!("file permutation has {} points, --n is {n}", p.len())),
            (None, None) => Ok(Permutation::identity(n)),
        };
        Ok((
            pick(&self.lambda, from_file.as_ref().map(|p| &p.0))?,
            pick(&self.rho, from_file.as_ref().map(|p| &p.1))?,
        ))
    }

    fn explicit(&self, limits: &Limits) -> Result<(AlgebraFile, ExplicitKite), String> {
        let (file, algebra) = load_path(Path::new(&self.algebra))?;
        let (lambda, rho) = self.permutations(Some(&file))?;
        let k = ExplicitKite::build(algebra.gpea(), lambda, rho, limits).map_err(|e| e.to_string())?;
        Ok((file, k))
    }
}

fn describe_kite<B: KiteBase>(out: &mut Outcome, k: &Kite<B>) {
    out.line(format!("index maps: λ = {}, ρ = {}", k.lambda(), k.rho()));
    out.set("lambda", k.lambda().to_string());
    out.set("rho", k.rho().to_string());
}

pub fn kite(spec: &KiteSpec, verify: bool, emit: bool, samples: usize, seed: u64, limits: &Limits) -> CommandResult {
    if spec.is_nat() {
        return nat_kite(spec, verify, samples, seed);
    }
    let mut out = Outcome::new("kite");
    let (_, k) = spec.explicit(limits)?;
    describe_kite(&mut out, k.kite());
    let p = k.pea();
    out.line(format!("explicit kite: {} elements, {} per sort, {} indices", k.size(), k.block(), k.arity()));
    out.set("size", k.size());
    out.set("arity", k.arity());
    let (lambda, rho) = (k.kite().lambda().as_permutation().cloned(), k.kite().rho().as_permutation().cloned());
    if let (Some(l), Some(r)) = (&lambda, &rho) {
        let parts = connected_components(l, r).map_err(|e| e.to_string())?;
        out.line(format!("connected components: {}", parts.len()));
        out.set("components", parts.len());
    }
    match p.asymmetry_witness() {
        None => out.line("symmetric: yes"),
        Some(x) => out.line(format!(
            "symmetric: no, {}⁻ = {} but {}~ = {}",
            k.label(x),
            k.label(p.minus(x)),
            k.label(x),
            k.label(p.tilde(x))
        )),
    }
    out.set("symmetric", p.is_symmetric());
    let perfect = check_perfect(p);
    out.line(format!("perfect: {}", yes(perfect.is_some())));
    out.set("perfect", perfect.is_some());
    if verify {
        let report = verify_pea_table(p.gpea().table(), p.zero(), p.top()).map_err(|e| e.to_string())?;
        if report.passed() {
            out.line("pea axioms: all hold");
        } else {
            out.line(format!("pea axioms: {} violation(s), first {}", report.violations.len(), report.violations[0]));
        }
        out.set("pea_axioms", report.passed());
        let mismatch = (0..k.size()).find(|&x| {
            let minus = (0..k.size()).find(|&d| p.add(d, x) == Some(p.top()));
            let tilde = (0..k.size()).find(|&e| p.add(x, e) == Some(p.top()));
            (minus, tilde) != (Some(k.formula_negations(x).0), Some(k.formula_negations(x).1))
        });
        match mismatch {
            None => out.line("negation formulas: match search on every element"),
            Some(x) => out.line(format!("negation formulas: differ at {}", k.label(x))),
        }
        out.set("negation_formulas", mismatch.is_none());
        if !report.passed() || mismatch.is_some() {
            out.fail();
        }
    }
    if emit {
        let (l, r) = (lambda.expect("finite"), rho.expect("finite"));
        let text = emit_algebra(&AlgebraFile::from_pea(p).with_perms(l, r));
        out.set("emitted", text.clone());
        out.line(text.trim_end());
    }
    Ok(out)
}

fn nat_kite(spec: &KiteSpec, verify: bool, samples: usize, seed: u64) -> CommandResult {
    let mut out = Outcome::new("kite");
    let (lambda, rho) = spec.permutations(None)?;
    let symmetric_rule = lambda == rho;
    let k = Kite::new(NatChain, lambda, rho).map_err(|e| e.to_string())?;
    describe_kite(&mut out, &k);
    let n = k.lambda().as_permutation().map_or(0, Permutation::len);
    out.line(format!("lazy kite over ℕ, {n} indices, {samples} samples, seed {seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sym = k.symmetry_probe(&mut rng, samples, 9);
    match &sym.witness {
        None => out.line(format!("symmetric on {} probes: yes", sym.checked)),
        Some(w) => {
            let (m, t) = k.negations(w);
            out.line(format!(
                "symmetric: no, {}⁻ = {} but {}~ = {}",
                k.format(w),
                k.format(&m),
                k.format(w),
                k.format(&t)
            ));
        }
    }
    out.set("symmetric", sym.holds);
    if symmetric_rule {
        let perfect = k.perfect_probe(&mut rng, samples, 9);
        out.line(format!("perfect with E0 = LOWER on {} probes: {}", perfect.checked, yes(perfect.holds)));
        if let Some(w) = &perfect.witness {
            out.line(format!("  {w}"));
        }
        out.set("perfect", perfect.holds);
        let state = k.designated_state_probe(&mut rng, samples, 9);
        out.line(format!("LOWER ↦ 0, UPPER ↦ 1 additive on {} sums: {}", state.checked, yes(state.holds)));
        out.set("designated_state", state.holds);
    }
    if verify {
        let mut bad = None;
        let mut checked = 0;
        for _ in 0..samples {
            let x = k.sample_any(&mut rng, 9);
            let (m, t) = k.negations(&x);
            if k.add(&m, &x).ok().flatten() != Some(k.one()) || k.add(&x, &t).ok().flatten() != Some(k.one()) {
                bad = Some(format!("negations of {}", k.format(&x)));
                break;
            }
            let (y, z) = (k.sample_any(&mut rng, 9), k.sample_any(&mut rng, 9));
            let left = k.add(&x, &y).ok().flatten().and_then(|xy| k.add(&xy, &z).ok().flatten());
            let right = k.add(&y, &z).ok().flatten().and_then(|yz| k.add(&x, &yz).ok().flatten());
            checked += 1;
            if left != right {
                bad = Some(format!("({} + {}) + {}", k.format(&x), k.format(&y), k.format(&z)));
                break;
            }
        }
        match &bad {
            None => out.line(format!("sampled negation and associativity checks: {checked} passed")),
            Some(w) => {
                out.line(format!("sampled checks fail at {w}"));
                out.fail();
            }
        }
        out.set("sampled_verify", bad.is_none());
    }
    Ok(out)
}

pub fn rdp(path: &Path, level: &str, limits: &Limits) -> CommandResult {
    let (_, algebra) = load_path(path)?;
    let e = algebra.gpea();
    let props: Vec<RieszProperty> = if level == "all" {
        RieszProperty::ALL.to_vec()
    } else {
        vec![level.parse()?]
    };
    let mut out = Outcome::new("rdp");
    out.set("file", path.display().to_string());
    let mut reports = Vec::new();
    for p in props {
        let r = riesz::check(e, p, limits).map_err(|e| e.to_string())?;
        let mut entry = json!({ "property": p.to_string(), "holds": r.holds, "instances": r.instances });
        if let Some(q) = &r.counterexample {
            let names = q.iter().map(|&x| e.label(x)).join(", ");
            out.line(format!("{p}: fails, counterexample ({names})"));
            entry["counterexample"] = labels_json(e, q.iter().copied());
            out.fail();
        } else {
            let w = match &r.witness {
                Some(Witness::Table(t)) => format!(
                    ", e.g. table [{} {} | {} {}]",
                    e.label(t.c11),
                    e.label(t.c12),
                    e.label(t.c21),
                    e.label(t.c22)
                ),
                Some(Witness::Interpolant(c)) => format!(", e.g. interpolant {}", e.label(*c)),
                Some(Witness::Split(b, c)) => format!(", e.g. split {} + {}", e.label(*b), e.label(*c)),
                None => String::new(),
            };
            out.line(format!("{p}: holds over {} instances{w}", r.instances));
        }
        reports.push(entry);
    }
    out.set("reports", reports);
    Ok(out)
}

pub fn ideals(path: &Path, normal_only: bool, limits: &Limits) -> CommandResult {
    let (_, algebra) = load_path(path)?;
    let e = algebra.gpea();
    let mut out = Outcome::new("ideals");
    out.set("file", path.display().to_string());
    let all = enumerate_ideals(e, normal_only, limits).map_err(|e| e.to_string())?;
    let mut listed = Vec::new();
    out.line(format!("{} {}ideal(s)", all.len(), if normal_only { "normal " } else { "" }));
    for i in &all {
        let normal = is_normal(e, i).map_err(|e| e.to_string())?;
        let maximal = is_maximal(e, i);
        let mut tags = Vec::new();
        if normal {
            tags.push("normal");
        }
        if maximal {
            tags.push("maximal");
        }
        out.line(format!("  {} {}", set_of(e, i.elements()), tags.join(" ")).trim_end().to_string());
        listed.push(json!({ "members": labels_json(e, i.elements()), "normal": normal, "maximal": maximal }));
    }
    out.set("ideals", listed);
    let least = least_nontrivial_normal_ideal(e);
    match &least {
        Some(i) => out.line(format!("least nontrivial normal ideal: {}", set_of(e, i.elements()))),
        None => out.line("least nontrivial normal ideal: none"),
    }
    out.set("least_nontrivial_normal", least.map(|i| labels_json(e, i.elements())).unwrap_or(Value::Null));
    let si = is_subdirectly_irreducible(e);
    out.line(format!("subdirectly irreducible: {}", yes(si)));
    out.set("subdirectly_irreducible", si);
    Ok(out)
}

pub fn components(n: usize, lambda: &str, rho: &str) -> CommandResult {
    let (l, r) = (parse_permutation(lambda, n)?, parse_permutation(rho, n)?);
    let parts = connected_components(&l, &r).map_err(|e| e.to_string())?;
    let mut out = Outcome::new("components");
    out.line(format!("λ = {l}, ρ = {r}, σ = ρ∘λ⁻¹ = {}", parts.sigma));
    out.line(format!("{} component(s)", parts.len()));
    let sorted = parts.sorted();
    for c in &sorted {
        out.line(format!("  {{{}}}", c.iter().join(", ")));
    }
    out.set("lambda", l.to_string());
    out.set("rho", r.to_string());
    out.set("sigma", parts.sigma.to_string());
    out.set("components", sorted);
    Ok(out)
}

pub fn quotient_cmd(path: &Path, ideal: &str) -> CommandResult {
    let (_, algebra) = load_path(path)?;
    let e = algebra.gpea();
    let members = parse_elements(ideal, e)?;
    let mut with_zero = members.clone();
    with_zero.push(e.zero());
    let i = Ideal::from_elements(e, &with_zero).map_err(|err| format!("{}: {err}", set_of(e, members.clone())))?;
    let mut out = Outcome::new("quotient");
    out.set("ideal", labels_json(e, i.elements()));
    out.line(format!("ideal {}", set_of(e, i.elements())));
    if !is_normal(e, &i).map_err(|e| e.to_string())? {
        out.line("not normal: no quotient");
        out.fail();
        return Ok(out);
    }
    match congruence_from_normal_ideal(e, &i) {
        Err(err @ (IdealError::NotTransitive(..) | IdealError::NotCompatible(..))) => {
            out.line(format!("relation is not a congruence: {err}"));
            out.set("congruence", err.to_string());
            out.fail();
            return Ok(out);
        }
        Err(err) => return Err(err.to_string()),
        Ok(_) => {}
    }
    let q = match quotient(e, &i) {
        Ok(q) => q,
        Err(err) => {
            out.line(format!("quotient fails: {err}"));
            out.fail();
            return Ok(out);
        }
    };
    let blocks = q.congruence.blocks();
    out.line(format!("{} block(s)", blocks.len()));
    for b in &blocks {
        out.line(format!("  {}", set_of(e, b.iter().copied())));
    }
    out.set("blocks", blocks.iter().map(|b| labels_json(e, b.iter().copied())).collect::<Vec<_>>());
    let text = emit_algebra(&AlgebraFile::from_gpea(&q.algebra));
    out.line(text.trim_end());
    out.set("quotient", text);
    Ok(out)
}

pub fn decompose(spec: &KiteSpec, quadruple: Option<&str>, property: &str, limits: &Limits) -> CommandResult {
    let property: RieszProperty = property.parse()?;
    if let Some(q) = quadruple {
        return if spec.is_nat() {
            let (lambda, rho) = spec.permutations(None)?;
            let k = Kite::new(NatChain, lambda, rho).map_err(|e| e.to_string())?;
            decompose_quadruple(&k, q, property, |t| t.parse::<u64>().map_err(|e| format!("`{t}`: {e}")))
        } else {
            let (_, explicit) = spec.explicit(limits)?;
            let base = explicit.base().clone();
            decompose_quadruple(explicit.kite(), q, property, |t| {
                parse_elements(t, &base)?.first().copied().ok_or_else(|| format!("empty coordinate `{t}`"))
            })
        };
    }
    if spec.is_nat() {
        return Err("subdirect decomposition needs a finite base; pass --quadruple for the ℕ kite".into());
    }
    let (_, k) = spec.explicit(limits)?;
    let mut out = Outcome::new("decompose");
    describe_kite(&mut out, k.kite());
    let d = subdirect_decompose(&k, limits).map_err(|e| e.to_string())?;
    out.line(format!(
        "subdirect decomposition into {} component kite(s), embedding verified on {}×{} pairs",
        d.components.len(),
        k.size(),
        k.size()
    ));
    let mut comps = Vec::new();
    for c in &d.components {
        out.line(format!(
            "  upper indices {:?}, lower indices {:?}: {} elements",
            c.upper,
            c.lower,
            c.kite.size()
        ));
        comps.push(json!({ "upper": c.upper, "lower": c.lower, "size": c.kite.size() }));
    }
    out.set("components", comps);
    match irreducibility_check(&k, limits) {
        Ok(c) => {
            out.line(format!(
                "irreducibility: base has least nontrivial normal ideal {}, single component {}, predicted {}, observed {}",
                yes(c.base_has_least),
                yes(c.single_component),
                yes(c.predicted),
                yes(c.observed)
            ));
            out.set(
                "irreducibility",
                json!({ "base_has_least": c.base_has_least, "single_component": c.single_component,
                        "predicted": c.predicted, "observed": c.observed }),
            );
            if c.predicted != c.observed {
                out.fail();
                let e = k.gpea();
                for a in e.atoms() {
                    let mut seed = fixedbitset::FixedBitSet::with_capacity(e.size());
                    seed.insert(a);
                    let closure = normal_closure(e, &seed);
                    out.line(format!("  normal closure of {}: {}", k.label(a), set_of(e, closure.elements())));
                }
            }
        }
        Err(ConnectivityError::Hypothesis(h)) => {
            out.line(format!("irreducibility: hypotheses not met ({h})"));
            out.set("irreducibility", Value::Null);
        }
        Err(err) => return Err(err.to_string()),
    }
    Ok(out)
}

fn decompose_quadruple<B: RieszBase>(
    k: &Kite<B>,
    spec: &str,
    property: RieszProperty,
    coord: impl Fn(&str) -> Result<B::Elem, String> + Copy,
) -> CommandResult {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let [a1, a2, b1, b2] = parts.as_slice() else {
        return Err(format!("--quadruple needs four elements, found {}", parts.len()));
    };
    let parse = |s: &str| -> Result<KiteElement<B::Elem>, String> {
        let (sort, coords) = parse_kite_element(s, coord)?;
        k.dense(sort, coords).map_err(|e| e.to_string())
    };
    let (a1, a2, b1, b2) = (parse(a1)?, parse(a2)?, parse(b1)?, parse(b2)?);
    let mut out = Outcome::new("decompose");
    describe_kite(&mut out, k);
    let f = |x: &KiteElement<B::Elem>| k.format(x);
    out.line(format!("{} + {} = {} + {}", f(&a1), f(&a2), f(&b1), f(&b2)));
    match kite_rdp_decompose(k, [&a1, &a2], [&b1, &b2], property) {
        Ok(t) => {
            let ok = t.certifies(|x, y| k.add(x, y).ok().flatten(), [&a1, &a2], [&b1, &b2]);
            out.line(format!("{property} table [{} {} | {} {}]", f(&t.c11), f(&t.c12), f(&t.c21), f(&t.c22)));
            out.line(format!("revalidated: {}", yes(ok)));
            out.set("table", vec![f(&t.c11), f(&t.c12), f(&t.c21), f(&t.c22)]);
            out.set("revalidated", ok);
            if !ok {
                out.fail();
            }
        }
        Err(err) => {
            out.line(format!("no table: {err}"));
            out.set("error", err.to_string());
            out.fail();
        }
    }
    Ok(out)
}

fn fraction(r: &Rational) -> String {
    r.to_string()
}

pub fn states(path: &Path, limits: &Limits) -> CommandResult {
    let (_, algebra) = load_path(path)?;
    let Some(p) = algebra.pea() else {
        return Err("states need a pea file".into());
    };
    let e = p.gpea();
    let space = find_states(p, limits).map_err(|e| e.to_string())?;
    let mut out = Outcome::new("states");
    out.set("file", path.display().to_string());
    let dim = space.dimension().map_or("none".to_string(), |d| d.to_string());
    out.line(format!("{} extreme state(s), affine dimension {dim}", space.vertices.len()));
    let mut listed = Vec::new();
    for v in &space.vertices {
        let zero_set = kernel(v);
        let normal = Ideal::from_elements(e, &zero_set).ok().map(|i| is_normal(e, &i).unwrap_or(false));
        let values = e.elements().map(|x| format!("{}={}", e.label(x), fraction(&v[x]))).join(" ");
        out.line(format!("  {values}"));
        out.line(format!(
            "    kernel {} {}",
            set_of(e, zero_set.iter().copied()),
            match normal {
                Some(true) => "normal ideal",
                Some(false) => "ideal, not normal",
                None => "not an ideal",
            }
        ));
        listed.push(json!({
            "values": v.iter().map(fraction).collect::<Vec<_>>(),
            "kernel": labels_json(e, zero_set.iter().copied()),
            "kernel_normal": normal == Some(true),
        }));
    }
    out.set("states", listed);
    if space.is_empty() {
        out.fail();
    }
    Ok(out)
}

fn spotcheck_lines(out: &mut Outcome, r: &IsoSpotcheck) {
    out.line(format!(
        "coordinate map {}: {} pairs ({} defined), box of {} checked, seed {}",
        r.pi, r.pairs, r.defined_pairs, r.box_checked, r.seed
    ));
    out.line(format!("homomorphism and bijection checks: {}", if r.holds { "pass" } else { "fail" }));
    if let Some(w) = &r.witness {
        out.line(format!("  {w}"));
    }
    out.line(format!(
        "candidates tried: {}",
        r.tried.iter().map(|(p, ok)| format!("{p}:{}", if *ok { "ok" } else { "x" })).join(" ")
    ));
    out.set("pi", r.pi.clone());
    out.set("pairs", r.pairs);
    out.set("defined_pairs", r.defined_pairs);
    out.set("holds", r.holds);
    out.set("witness", r.witness.clone().map_or(Value::Null, Value::from));
    if !r.holds {
        out.fail();
    }
}

pub fn iso(n: usize, pairs: usize, bound: u64, seed: u64, wreath: bool) -> CommandResult {
    let mut out = Outcome::new("iso");
    let r = if wreath {
        out.line("kite over ℕ with I = ℤ, λ = id, ρ(i) = i − 1, against Γ(W(ℤ), u)");
        wreath_iso_spotcheck(pairs, bound, seed)
    } else {
        if n == 0 {
            return Err("--n must be positive".into());
        }
        out.line(format!("kite over ℕ with n = {n}, λ = id, ρ(i) = i − 1 (mod {n}), against Γ(G_{n}, u_{n})"));
        example_iso_spotcheck(n, pairs, bound, seed)
    };
    spotcheck_lines(&mut out, &r);
    Ok(out)
}

pub fn fuzz_cmd(config: &FuzzConfig, out_dir: Option<&PathBuf>, limits: &Limits) -> CommandResult {
    if config.min_size == 0 || config.min_size > config.max_size {
        return Err("size range must satisfy 1 <= min <= max".into());
    }
    if !(0.0..=1.0).contains(&config.density) {
        return Err("density must lie in [0, 1]".into());
    }
    let result = fuzz(config, limits);
    let mut out = Outcome::new("fuzz");
    out.line(format!(
        "seed {}, sizes {}..={}, density {}, {}",
        config.seed,
        config.min_size,
        config.max_size,
        config.density,
        if config.commutative { "commutative" } else { "any" }
    ));
    for l in result.summary().lines() {
        out.line(l.to_string());
    }
    let mut findings = Vec::new();
    for f in &result.findings {
        let tag = if f.kind == PropertyKind::Asserted { "violation" } else { "found" };
        out.line(format!(
            "{tag} {} at instance {}: {} (shrunk to {} elements)",
            f.property, f.instance, f.witness, f.fixture_size
        ));
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            let path = dir.join(format!("{}-seed{}.gpea", f.property, config.seed));
            fs::write(&path, &f.fixture).map_err(|e| format!("{}: {e}", path.display()))?;
            out.line(format!("  archived {}", path.display()));
        }
        findings.push(json!({ "property": f.property, "instance": f.instance, "witness": f.witness,
                               "fixture": f.fixture }));
    }
    out.set("instances", result.instances.len());
    out.set(
        "tallies",
        result.tallies.iter().map(|(n, _, h)| json!({ "property": n, "hits": h })).collect::<Vec<_>>(),
    );
    out.set("findings", findings);
    out.set("violations", result.violations());
    if result.violations() > 0 {
        out.fail();
    }
    Ok(out)
}

/// Full audit of every `.gpea` and `.pea` file under `dir`, then a seeded
/// fuzz run. The output depends only on the files and the seed.
pub fn report(dir: &Path, seed: u64, fuzz_count: usize, limits: &Limits) -> CommandResult {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|s| s.to_str()), Some("gpea" | "pea")))
        .collect();
    files.sort();
    let mut out = Outcome::new("report");
    out.line(format!("fixture directory {} ({} files), seed {seed}", dir.display(), files.len()));
    let mut entries = Vec::new();
    for path in &files {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("?").to_string();
        out.line(String::new());
        out.line(format!("== {name}"));
        let mut sections = serde_json::Map::new();
        sections.insert("file".into(), name.clone().into());
        let text = read(path)?;
        let file = match parse_algebra(&text) {
            Ok(f) => f,
            Err(e) => {
                out.line(format!("  unreadable: {e}"));
                sections.insert("error".into(), e.to_string().into());
                entries.push(Value::Object(sections));
                continue;
            }
        };
        let round_trip = parse_algebra(&emit_algebra(&file)).as_ref() == Ok(&file);
        out.line(format!("  round trip: {}", yes(round_trip)));
        sections.insert("round_trip".into(), round_trip.into());
        let sub = |r: CommandResult| r.unwrap_or_else(|e| Outcome::error("", e));
        let mut add = |out: &mut Outcome, key: &str, r: Outcome| {
            for l in &r.lines {
                out.line(format!("  {l}"));
            }
            sections.insert(key.into(), Value::Object(r.json));
        };
        let v = sub(verify(path));
        let valid = v.status == crate::output::Status::Holds;
        add(&mut out, "verify", v);
        if !valid {
            entries.push(Value::Object(sections));
            continue;
        }
        let size = file.size();
        if size <= limits.riesz_carrier {
            add(&mut out, "rdp", sub(rdp(path, "all", limits)));
        }
        if size <= limits.ideal_carrier {
            add(&mut out, "ideals", sub(ideals(path, false, limits)));
        }
        if file.top.is_some() && size <= limits.state_carrier {
            add(&mut out, "states", sub(states(path, limits)));
        }
        if file.lambda.is_some() {
            let spec = KiteSpec { algebra: path.display().to_string(), n: None, lambda: None, rho: None };
            add(&mut out, "kite", sub(kite(&spec, true, false, 0, seed, limits)));
            add(&mut out, "decompose", sub(decompose(&spec, None, "rdp", limits)));
        }
        entries.push(Value::Object(sections));
    }
    out.line(String::new());
    let config = FuzzConfig { seed, count: fuzz_count, ..FuzzConfig::default() };
    let f = sub_fuzz(&config, limits);
    out.line(format!("== fuzz ({fuzz_count} instances)"));
    for l in &f.lines {
        out.line(format!("  {l}"));
    }
    out.set("fixtures", entries);
    out.set("fuzz", Value::Object(f.json));
    Ok(out)
}

fn sub_fuzz(config: &FuzzConfig, limits: &Limits) -> Outcome {
    fuzz_cmd(config, None, limits).unwrap_or_else(|e| Outcome::error("fuzz", e))
}
