use std::collections::BTreeSet;

use kitelab::algebra::catalog;
use kitelab::connectivity::*;
use kitelab::{ExplicitKite, Limits, Permutation};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_image(v).unwrap())
}

fn pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=8).prop_flat_map(|n| (permutation(n), permutation(n)))
}

proptest! {
    #[test]
    fn components_agree_with_reachability((lambda, rho) in pair()) {
        let parts = connected_components(&lambda, &rho).unwrap();
        let n = lambda.len();
        for i in 0..n {
            for j in 0..n {
                let same = parts.component_of(i) == parts.component_of(j);
                prop_assert_eq!(same, reachable(&lambda, &rho, i, j), "{} {}", i, j);
            }
        }
    }

    #[test]
    fn preimages_of_components_coincide((lambda, rho) in pair()) {
        for c in connected_components(&lambda, &rho).unwrap().sorted() {
            let l: BTreeSet<usize> = c.iter().map(|&i| lambda.apply_inverse(i)).collect();
            let r: BTreeSet<usize> = c.iter().map(|&i| rho.apply_inverse(i)).collect();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn canonical_form_is_identity_and_cycle((lambda, rho) in pair()) {
        match canonicalize(&lambda, &rho) {
            Ok(c) => {
                prop_assert!(c.lambda.is_identity());
                prop_assert_eq!(c.rho, Permutation::cycle_down(lambda.len()));
            }
            Err(ConnectivityError::MultipleComponents(k)) => prop_assert!(k > 1),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn identity_and_cycle_are_connected() {
    let parts = connected_components(&Permutation::identity(5), &Permutation::cycle_down(5)).unwrap();
    assert_eq!(parts.len(), 1);
    let parts = connected_components(&Permutation::identity(5), &Permutation::identity(5)).unwrap();
    assert_eq!(parts.len(), 5);
}

#[test]
fn connected_kites_relabel_to_the_canonical_kite() {
    let base = catalog::chain(2);
    let limits = Limits::default();
    for n in 1..=3 {
        for lambda in Permutation::all(n) {
            for rho in Permutation::all(n) {
                if connected_components(&lambda, &rho).unwrap().len() != 1 {
                    continue;
                }
                // λ ≠ ρ needs a total base, so only the trivial base qualifies
                let b = if lambda == rho { base.clone() } else { catalog::trivial() };
                let k = ExplicitKite::build(&b, lambda.clone(), rho.clone(), &limits).unwrap();
                let (target, map) = verify_canonical(&k, &limits).unwrap();
                assert_eq!(target.size(), k.size());
                assert_eq!(map.len(), k.size());
            }
        }
    }
}

#[test]
fn two_component_kite_embeds_into_a_product() {
    let limits = Limits::default();
    let k = ExplicitKite::build(&catalog::chain(2), Permutation::identity(2), Permutation::identity(2), &limits).unwrap();
    let d = subdirect_decompose(&k, &limits).unwrap();
    assert_eq!(d.components.len(), 2);
    for c in &d.components {
        assert!(kitelab::algebra::find_pea_isomorphism(c.kite.pea(), &catalog::boolean4()).is_some());
    }
    assert_eq!(d.embedding.len(), 8);
}

#[test]
fn irreducibility_prediction_on_the_two_index_kite() {
    let limits = Limits::default();
    let k = ExplicitKite::build(&catalog::chain(2), Permutation::identity(2), Permutation::identity(2), &limits).unwrap();
    let check = irreducibility_check(&k, &limits).unwrap();
    assert!(check.base_has_least);
    assert!(!check.single_component);
    assert!(!check.predicted);
    assert_eq!(check.predicted, check.observed);
}
