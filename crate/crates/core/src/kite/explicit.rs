use crate::algebra::{Gpea, PartialTable, Pea};
use crate::kite::{Kite, KiteElement, KiteError, Permutation, Sort};
use crate::limits::Limits;

/// A finite kite materialized as a pseudo effect algebra.
///
/// Table indices use mixed radix `|E|` over the coordinates, coordinate 0
/// least significant. The `LOWER` block comes first, then `UPPER`.
#[derive(Clone, Debug)]
pub struct ExplicitKite {
    kite: Kite<Gpea>,
    pea: Pea,
    tuples: Vec<Vec<usize>>,
}

impl ExplicitKite {
    pub fn build(base: &Gpea, lambda: Permutation, rho: Permutation, limits: &Limits) -> Result<Self, KiteError> {
        let n = lambda.len();
        let m = base.size();
        let block = u32::try_from(n)
            .ok()
            .and_then(|n| m.checked_pow(n))
            .filter(|b| b.checked_mul(2).is_some());
        let cap = limits.explicit_carrier;
        match block {
            Some(b) if 2 * b <= cap => {}
            Some(b) => return Err(KiteError::BudgetExceeded { carrier: (2 * b).to_string(), cap }),
            None => return Err(KiteError::BudgetExceeded { carrier: format!("2·{m}^{n}"), cap }),
        }
        let kite = Kite::new(base.clone(), lambda, rho)?;
        let block = block.expect("checked");

        let tuples: Vec<Vec<usize>> = (0..block)
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = k % m;
                        k /= m;
                        d
                    })
                    .collect()
            })
            .collect();
        let encode = |digits: &[usize]| digits.iter().rev().fold(0, |acc, &d| acc * m + d);
        let lam = kite.lambda().as_permutation().expect("finite").clone();
        let rho = kite.rho().as_permutation().expect("finite").clone();

        let size = 2 * block;
        let mut table = PartialTable::undefined(size);
        let mut scratch = vec![0; n];
        for x in 0..size {
            for y in 0..size {
                let (xs, ys) = (x >= block, y >= block);
                let (f, g) = (&tuples[x % block], &tuples[y % block]);
                let ok = match (xs, ys) {
                    (true, true) => false,
                    (true, false) => (0..n).all(|i| {
                        base.right_diff_opt(g[rho.apply_inverse(i)], f[i]).map(|c| scratch[i] = c).is_some()
                    }),
                    (false, true) => (0..n).all(|i| {
                        base.left_diff_opt(g[i], f[lam.apply_inverse(i)]).map(|c| scratch[i] = c).is_some()
                    }),
                    (false, false) => (0..n).all(|j| base.add(f[j], g[j]).map(|c| scratch[j] = c).is_some()),
                };
                if ok {
                    let offset = if xs || ys { block } else { 0 };
                    table.set(x, y, Some(offset + encode(&scratch)));
                }
            }
        }

        let labels = (0..size)
            .map(|k| {
                let sort = if k < block { Sort::Lower } else { Sort::Upper };
                let parts: Vec<String> = tuples[k % block].iter().map(|&v| base.label(v)).collect();
                format!("{sort}({})", parts.join(","))
            })
            .collect();
        let gpea = Gpea::new(table, 0)?.with_labels(labels)?;
        let pea = Pea::new(gpea, block)?;
        Ok(ExplicitKite { kite, pea, tuples })
    }

    pub fn kite(&self) -> &Kite<Gpea> {
        &self.kite
    }

    pub fn pea(&self) -> &Pea {
        &self.pea
    }

    pub fn into_pea(self) -> Pea {
        self.pea
    }

    pub fn gpea(&self) -> &Gpea {
        self.pea.gpea()
    }

    pub fn base(&self) -> &Gpea {
        self.kite.base()
    }

    pub fn size(&self) -> usize {
        self.pea.size()
    }

    /// Number of elements of each sort, `|E|^|I|`.
    pub fn block(&self) -> usize {
        self.tuples.len()
    }

    pub fn arity(&self) -> usize {
        self.tuples.first().map_or(0, Vec::len)
    }

    pub fn sort_of(&self, x: usize) -> Sort {
        if x < self.block() {
            Sort::Lower
        } else {
            Sort::Upper
        }
    }

    pub fn tuple(&self, x: usize) -> &[usize] {
        &self.tuples[x % self.block()]
    }

    pub fn encode(&self, sort: Sort, digits: &[usize]) -> usize {
        let m = self.base().size();
        let k = digits.iter().rev().fold(0, |acc, &d| acc * m + d);
        match sort {
            Sort::Lower => k,
            Sort::Upper => self.block() + k,
        }
    }

    pub fn element(&self, x: usize) -> KiteElement<usize> {
        self.kite.dense(self.sort_of(x), self.tuple(x).to_vec()).expect("table element")
    }

    pub fn index_of(&self, x: &KiteElement<usize>) -> Option<usize> {
        if !self.kite.contains(x) {
            return None;
        }
        Some(self.encode(x.sort(), &self.kite.coords(x)?))
    }

    /// `(x⁻, x~)` computed from the closed forms rather than the table.
    pub fn formula_negations(&self, x: usize) -> (usize, usize) {
        let (minus, tilde) = self.kite.negations(&self.element(x));
        (
            self.index_of(&minus).expect("negation in kite"),
            self.index_of(&tilde).expect("negation in kite"),
        )
    }

    pub fn label(&self, x: usize) -> String {
        self.gpea().label(x)
    }
}

/// `E ⊎ Ē`, the kite with a single index.
pub fn unitization(base: &Gpea, limits: &Limits) -> Result<ExplicitKite, KiteError> {
    ExplicitKite::build(base, Permutation::identity(1), Permutation::identity(1), limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::find_pea_isomorphism;

    #[test]
    fn trivial_base_gives_two_element_algebra() {
        let k = ExplicitKite::build(&trivial(), Permutation::identity(2), Permutation::cycle_down(2), &Limits::default())
            .unwrap();
        assert_eq!(k.size(), 2);
        assert!(find_pea_isomorphism(k.pea(), &chain_pea(2)).is_some());
    }

    #[test]
    fn unitization_of_c2_is_boolean4() {
        let k = unitization(&chain(2), &Limits::default()).unwrap();
        assert!(find_pea_isomorphism(k.pea(), &boolean4()).is_some());
        assert_eq!(k.label(1), "L(1)");
        assert_eq!(k.label(3), "U(1)");
        assert_eq!(k.pea().add(1, 1), None);
        assert_eq!(k.pea().add(1, 3), Some(2));
    }

    #[test]
    fn unitization_of_c3_order() {
        let k = unitization(&chain(3), &Limits::default()).unwrap();
        let (l1, l2, u1, u2) = (1, 2, 4, 5);
        assert!(k.gpea().leq(l1, u1));
        assert!(!k.gpea().leq(l2, u2) && !k.gpea().leq(u2, l2));
    }

    #[test]
    fn table_agrees_with_lazy_rules() {
        let k = ExplicitKite::build(&chain(3), Permutation::identity(2), Permutation::identity(2), &Limits::default())
            .unwrap();
        for x in 0..k.size() {
            for y in 0..k.size() {
                let lazy = k.kite().add(&k.element(x), &k.element(y)).unwrap();
                assert_eq!(lazy.map(|s| k.index_of(&s).unwrap()), k.pea().add(x, y));
            }
        }
    }

    #[test]
    fn budget_and_gate() {
        let limits = Limits { explicit_carrier: 10, ..Limits::default() };
        let err = ExplicitKite::build(&chain(3), Permutation::identity(2), Permutation::identity(2), &limits);
        assert!(matches!(err, Err(KiteError::BudgetExceeded { .. })));
        let swap = Permutation::from_image(vec![1, 0]).unwrap();
        let err = ExplicitKite::build(&chain(2), Permutation::identity(2), swap, &Limits::default());
        assert!(matches!(err, Err(KiteError::NotWeaklyCommutative(_))));
    }
}
