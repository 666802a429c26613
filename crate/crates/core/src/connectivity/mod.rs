//! Connectivity of the index pair `(λ, ρ)` and the component decomposition
//! of finite kites.

use thiserror::Error;

use crate::algebra::{is_isomorphism, Gpea};
use crate::ideals::least_nontrivial_normal_ideal;
use crate::kite::{ExplicitKite, KiteError, Permutation, PermutationError, Sort};
use crate::limits::Limits;
use crate::riesz::{self, RieszError, RieszProperty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("index pair has {0} connected components, expected one")]
    MultipleComponents(usize),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Kite(#[from] KiteError),
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error("decomposition check failed: {0}")]
    Decomposition(String),
}

/// Orbits of `σ = ρ∘λ⁻¹`, each listed from its least index along `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Vec<usize>>,
    pub sigma: Permutation,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.contains(&i)).expect("partition")
    }

    /// Components with their indices sorted.
    pub fn sorted(&self) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect()
    }
}

pub fn connected_components(lambda: &Permutation, rho: &Permutation) -> Result<ComponentPartition, PermutationError> {
    let sigma = rho.compose(&lambda.inverse())?;
    Ok(ComponentPartition { components: sigma.orbits(), sigma })
}

pub fn are_connected(lambda: &Permutation, rho: &Permutation, i: usize, j: usize) -> Result<bool, PermutationError> {
    let p = connected_components(lambda, rho)?;
    Ok(p.component_of(i) == p.component_of(j))
}

/// Reachability as defined: `(ρ∘λ⁻¹)^m(i) = j` or `(λ∘ρ⁻¹)^m(i) = j` for
/// some `m ≥ 0`. Independent of [`connected_components`].
pub fn reachable(lambda: &Permutation, rho: &Permutation, i: usize, j: usize) -> bool {
    let n = lambda.len();
    let forward = |x: usize| rho.apply(lambda.apply_inverse(x));
    let backward = |x: usize| lambda.apply(rho.apply_inverse(x));
    let (mut x, mut y) = (i, i);
    for _ in 0..=n {
        if x == j || y == j {
            return true;
        }
        x = forward(x);
        y = backward(y);
    }
    false
}

/// Both sides of the irreducibility criterion for a kite with RDP1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCheck {
    pub base_has_least: bool,
    pub single_component: bool,
    /// `base_has_least && single_component`.
    pub predicted: bool,
    /// The kite has a least nontrivial normal ideal.
    pub observed: bool,
}

/// Evaluates the criterion after confirming its hypotheses: nontrivial
/// directed base and a kite with RDP1.
pub fn irreducibility_check(k: &ExplicitKite, limits: &Limits) -> Result<IrreducibilityCheck, ConnectivityError> {
    let base = k.base();
    if base.is_trivial() {
        return Err(ConnectivityError::Hypothesis("base is trivial".into()));
    }
    if !base.is_directed() {
        return Err(ConnectivityError::Hypothesis("base is not directed".into()));
    }
    let rdp1 = riesz::check(k.gpea(), RieszProperty::Rdp1, limits)?;
    if !rdp1.holds {
        return Err(ConnectivityError::Hypothesis("kite fails RDP1".into()));
    }
    let (lambda, rho) = permutations(k);
    let components = connected_components(lambda, rho)?;
    let base_has_least = least_nontrivial_normal_ideal(base).is_some();
    let single_component = components.len() == 1;
    Ok(IrreducibilityCheck {
        base_has_least,
        single_component,
        predicted: base_has_least && single_component,
        observed: least_nontrivial_normal_ideal(k.gpea()).is_some(),
    })
}

fn permutations(k: &ExplicitKite) -> (&Permutation, &Permutation) {
    (
        k.kite().lambda().as_permutation().expect("finite kite"),
        k.kite().rho().as_permutation().expect("finite kite"),
    )
}

/// Relabelings taking a connected pair to `λ = id`, `ρ(i) = i − 1 (mod n)`.
/// Lower index `j` becomes `lower(j)`, upper index `i` becomes `upper(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub lower: Permutation,
    pub upper: Permutation,
    pub lambda: Permutation,
    pub rho: Permutation,
}

pub fn canonicalize(lambda: &Permutation, rho: &Permutation) -> Result<Canonical, ConnectivityError> {
    let components = connected_components(lambda, rho)?;
    if components.len() != 1 {
        return Err(ConnectivityError::MultipleComponents(components.len()));
    }
    let n = lambda.len();
    let orbit = &components.components[0];
    let mut image = vec![0; n];
    for (k, &i) in orbit.iter().enumerate() {
        image[i] = (n - k) % n;
    }
    let upper = Permutation::from_image(image)?;
    let lower = upper.compose(lambda)?;
    let canonical = Canonical {
        lambda: upper.compose(lambda)?.compose(&lower.inverse())?,
        rho: upper.compose(rho)?.compose(&lower.inverse())?,
        lower,
        upper,
    };
    debug_assert!(canonical.lambda.is_identity());
    debug_assert_eq!(canonical.rho, Permutation::cycle_down(n));
    Ok(canonical)
}

/// Builds the canonical kite and checks that relabeling coordinates is an
/// isomorphism. Returns the canonical kite and the element map.
pub fn verify_canonical(k: &ExplicitKite, limits: &Limits) -> Result<(ExplicitKite, Vec<usize>), ConnectivityError> {
    let (lambda, rho) = permutations(k);
    let c = canonicalize(lambda, rho)?;
    let target = ExplicitKite::build(k.base(), c.lambda.clone(), c.rho.clone(), limits)?;
    let map: Vec<usize> = (0..k.size())
        .map(|x| {
            let relabel = if k.sort_of(x) == Sort::Lower { &c.lower } else { &c.upper };
            let mut digits = vec![0; k.arity()];
            for (j, &v) in k.tuple(x).iter().enumerate() {
                digits[relabel.apply(j)] = v;
            }
            target.encode(k.sort_of(x), &digits)
        })
        .collect();
    if !is_isomorphism(k.gpea(), target.gpea(), &map) {
        return Err(ConnectivityError::Decomposition("canonical relabeling is not an isomorphism".into()));
    }
    Ok((target, map))
}

/// A component kite `K_{J′,I′}` with both index sets relabeled to `0..k`.
#[derive(Clone, Debug)]
pub struct ComponentKite {
    /// `I′`, sorted.
    pub upper: Vec<usize>,
    /// `J′ = λ⁻¹(I′)`, sorted.
    pub lower: Vec<usize>,
    pub kite: ExplicitKite,
}

impl ComponentKite {
    fn project(&self, k: &ExplicitKite, x: usize) -> usize {
        let positions = if k.sort_of(x) == Sort::Lower { &self.lower } else { &self.upper };
        let tuple = k.tuple(x);
        let digits: Vec<usize> = positions.iter().map(|&p| tuple[p]).collect();
        self.kite.encode(k.sort_of(x), &digits)
    }
}

/// The kite as a subdirect product of its component kites.
#[derive(Clone, Debug)]
pub struct SubdirectDecomposition {
    pub components: Vec<ComponentKite>,
    /// `embedding[x][c]` is the image of `x` in component `c`.
    pub embedding: Vec<Vec<usize>>,
}

/// Splits along the connected components and verifies that the coordinate
/// restriction is injective, has surjective projections, and preserves and
/// reflects `+`.
pub fn subdirect_decompose(k: &ExplicitKite, limits: &Limits) -> Result<SubdirectDecomposition, ConnectivityError> {
    let (lambda, rho) = permutations(k);
    let partition = connected_components(lambda, rho)?;
    let mut components = Vec::new();
    for upper in partition.sorted() {
        let mut lower: Vec<usize> = upper.iter().map(|&i| lambda.apply_inverse(i)).collect();
        let mut via_rho: Vec<usize> = upper.iter().map(|&i| rho.apply_inverse(i)).collect();
        lower.sort_unstable();
        via_rho.sort_unstable();
        if lower != via_rho {
            return Err(ConnectivityError::Decomposition(format!("λ⁻¹ and ρ⁻¹ disagree on {upper:?}")));
        }
        let pos = |i: usize| upper.iter().position(|&u| u == i).expect("component index");
        let l = Permutation::from_image(lower.iter().map(|&j| pos(lambda.apply(j))).collect())?;
        let r = Permutation::from_image(lower.iter().map(|&j| pos(rho.apply(j))).collect())?;
        let kite = ExplicitKite::build(k.base(), l, r, limits)?;
        components.push(ComponentKite { upper, lower, kite });
    }
    let embedding: Vec<Vec<usize>> =
        (0..k.size()).map(|x| components.iter().map(|c| c.project(k, x)).collect()).collect();
    let d = SubdirectDecomposition { components, embedding };
    d.verify(k.gpea())?;
    Ok(d)
}

impl SubdirectDecomposition {
    fn verify(&self, e: &Gpea) -> Result<(), ConnectivityError> {
        let fail = |m: String| Err(ConnectivityError::Decomposition(m));
        let mut images: Vec<&Vec<usize>> = self.embedding.iter().collect();
        images.sort();
        images.dedup();
        if images.len() != self.embedding.len() {
            return fail("embedding is not injective".into());
        }
        for (c, comp) in self.components.iter().enumerate() {
            let mut hit = vec![false; comp.kite.size()];
            for img in &self.embedding {
                hit[img[c]] = true;
            }
            if hit.contains(&false) {
                return fail(format!("projection onto component {c} is not surjective"));
            }
        }
        for x in e.elements() {
            for y in e.elements() {
                let sum = e.add(x, y);
                for (c, comp) in self.components.iter().enumerate() {
                    let there = comp.kite.pea().add(self.embedding[x][c], self.embedding[y][c]);
                    let expected = sum.map(|s| self.embedding[s][c]);
                    if sum.is_some() && there != expected {
                        return fail(format!("sum {x} + {y} not preserved in component {c}"));
                    }
                }
                let all_defined = self
                    .components
                    .iter()
                    .enumerate()
                    .all(|(c, comp)| comp.kite.pea().add(self.embedding[x][c], self.embedding[y][c]).is_some());
                if sum.is_none() && all_defined {
                    return fail(format!("sum {x} + {y} not reflected"));
                }
            }
        }
        Ok(())
    }
}
