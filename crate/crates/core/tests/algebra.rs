mod common;

use common::{downset, named_peas};
use kitelab::algebra::{catalog, find_isomorphism, verify_gpea_axioms, verify_pea_axioms, Axiom};
use kitelab::{AlgebraError, Gpea, PartialTable};
use proptest::prelude::*;

proptest! {
    #[test]
    fn downsets_are_commutative_gpeas(d in downset(10)) {
        let e = d.gpea();
        prop_assert!(e.is_commutative());
        prop_assert!(e.is_weakly_commutative());
    }

    #[test]
    fn order_matches_coordinates(d in downset(10)) {
        let e = d.gpea();
        for a in e.elements() {
            for b in e.elements() {
                prop_assert_eq!(e.leq(a, b), d.leq(a, b), "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn differences_round_trip(d in downset(10)) {
        let e = d.gpea();
        for a in e.elements() {
            for b in e.elements() {
                match (e.left_diff(b, a), e.right_diff(a, b)) {
                    (Ok(l), Ok(r)) => {
                        prop_assert_eq!(e.add(l, a), Some(b));
                        prop_assert_eq!(e.add(a, r), Some(b));
                    }
                    (Err(_), Err(_)) => prop_assert!(!e.leq(a, b)),
                    _ => prop_assert!(false, "one-sided difference at ({}, {})", a, b),
                }
            }
        }
    }

    #[test]
    fn product_commutes_up_to_isomorphism(d in downset(5), f in downset(4)) {
        let (e, f) = (d.gpea(), f.gpea());
        let ef = catalog::product(&e, &f);
        let fe = catalog::product(&f, &e);
        prop_assert!(find_isomorphism(&ef, &fe).is_some());
    }

    #[test]
    fn rewriting_a_chain_entry_is_caught(k in 3usize..7, a in 1usize..6, b in 1usize..6, v in 0usize..7) {
        // deleting an entry can leave a valid GPEA; changing a value cannot
        let (a, b) = (a % k, b % k);
        let e = catalog::chain(k);
        let mut t = e.table().clone();
        let replacement = Some(v % k);
        prop_assume!(t.get(a, b) != replacement);
        t.set(a, b, replacement);
        prop_assert!(!verify_gpea_axioms(&t, 0).unwrap().passed());
    }
}

#[test]
fn named_peas_pass() {
    for (name, p) in named_peas() {
        assert!(verify_pea_axioms(p.gpea(), p.top()).unwrap().passed(), "{name}");
        for a in 0..p.size() {
            let (m, t) = p.negations(a);
            assert_eq!(p.add(m, a), Some(p.top()), "{name}");
            assert_eq!(p.add(a, t), Some(p.top()), "{name}");
        }
    }
}

#[test]
fn inverse_pair_breaks_gp4() {
    let t = PartialTable::from_fn(3, |a, b| match (a, b) {
        (0, y) => Some(y),
        (x, 0) => Some(x),
        (1, 2) | (2, 1) => Some(0),
        _ => None,
    })
    .unwrap();
    let r = verify_gpea_axioms(&t, 0).unwrap();
    assert!(r.violated(Axiom::Gp4));
    assert!(matches!(Gpea::new(t, 0), Err(AlgebraError::Axioms(_))));
}

#[test]
fn non_associative_table_breaks_gp1() {
    // 1 + 1 = 2, 2 + 1 = 3, but 1 + 2 undefined
    let t = PartialTable::from_fn(4, |a, b| match (a, b) {
        (0, y) => Some(y),
        (x, 0) => Some(x),
        (1, 1) => Some(2),
        (2, 1) => Some(3),
        _ => None,
    })
    .unwrap();
    assert!(verify_gpea_axioms(&t, 0).unwrap().violated(Axiom::Gp1));
}

#[test]
fn mo2_is_not_riesz_but_is_weakly_commutative() {
    let m = catalog::mo2();
    assert!(m.gpea().is_weakly_commutative());
    assert!(m.is_symmetric());
    assert_eq!(m.gpea().atoms(), vec![1, 2, 3, 4]);
}
