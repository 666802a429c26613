use crate::algebra::Pea;
use crate::kite::KiteBase;

/// `(E₀, E₁)` witnessing that a pseudo effect algebra is perfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectPartition {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// Elements `x` with `n·x` defined for every `n ≥ 1`.
pub fn infinitesimals(p: &Pea) -> Vec<usize> {
    let e = p.gpea();
    (0..p.size()).filter(|x| e.is_infinitesimal(x)).collect()
}

/// Tests the partition `E₀ = Infinit(P)`, `E₁` = rest, against (a)–(c).
pub fn check_perfect(p: &Pea) -> Option<PerfectPartition> {
    let n = p.size();
    let mut in_lower = vec![false; n];
    let lower = infinitesimals(p);
    for &x in &lower {
        in_lower[x] = true;
    }
    let upper: Vec<usize> = (0..n).filter(|&x| !in_lower[x]).collect();
    let class = |x: usize| usize::from(!in_lower[x]);

    // (a): negations swap the classes
    let negation_ok = (0..n).all(|x| {
        let (minus, tilde) = p.negations(x);
        class(minus) == 1 - class(x) && class(tilde) == 1 - class(x)
    });
    // (b): sums stay in E_{i+j}, never two upper elements
    let sums_ok = p.gpea().table().defined().all(|(x, y, s)| {
        let k = class(x) + class(y);
        k <= 1 && class(s) == k
    });
    // (c): E₀ + E₀ defined
    let lower_total = lower.iter().all(|&x| lower.iter().all(|&y| p.add(x, y).is_some()));

    (negation_ok && sums_ok && lower_total).then_some(PerfectPartition { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    #[test]
    fn finite_infinitesimals_are_zero() {
        assert_eq!(infinitesimals(&mo2()), vec![0]);
        assert_eq!(infinitesimals(&chain_pea(5)), vec![0]);
    }

    #[test]
    fn boolean4_is_not_perfect() {
        assert!(check_perfect(&boolean4()).is_none());
    }

    #[test]
    fn two_element_algebra_is_perfect() {
        let p = check_perfect(&chain_pea(2)).unwrap();
        assert_eq!((p.lower, p.upper), (vec![0], vec![1]));
    }
}
