use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{AlgebraError, PartialTable};

/// Axiom tags for GPEAs (GP1–GP5) and pseudo effect algebras ((i)–(iv)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Gp1,
    Gp2,
    Gp3,
    Gp4,
    Gp5,
    PeaAssociativity,
    PeaComplements,
    PeaConjugates,
    PeaTopAbsorbing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Axiom::Gp1 => "GP1",
            Axiom::Gp2 => "GP2",
            Axiom::Gp3 => "GP3",
            Axiom::Gp4 => "GP4",
            Axiom::Gp5 => "GP5",
            Axiom::PeaAssociativity => "PEA(i)",
            Axiom::PeaComplements => "PEA(ii)",
            Axiom::PeaConjugates => "PEA(iii)",
            Axiom::PeaTopAbsorbing => "PEA(iv)",
        };
        f.write_str(tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.axiom)?;
        for (k, w) in self.witness.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// Outcome of an exhaustive axiom check. `passed()` iff no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        let mut tags: Vec<_> = self.violations.iter().map(|v| v.axiom).collect();
        tags.sort();
        tags.dedup();
        tags
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<usize>) {
        self.violations.push(Violation { axiom, witness });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("all axioms hold");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        if let Some(first) = self.violations.first() {
            write!(f, ", first: {first}")?;
        }
        Ok(())
    }
}

/// Exhaustively checks GP1–GP5 for `table` with unit `zero`.
///
/// Every triple is visited for GP1; both association orders are compared for
/// definedness and value. Malformed input (zero out of range) is a structural
/// error, never an axiom violation.
pub fn verify_gpea_axioms(table: &PartialTable, zero: usize) -> Result<AxiomReport, AlgebraError> {
    let n = table.size();
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    if zero >= n {
        return Err(AlgebraError::ElementOutOfRange { element: zero, size: n });
    }
    let mut report = AxiomReport::default();

    // GP5
    for a in 0..n {
        if table.get(a, zero) != Some(a) || table.get(zero, a) != Some(a) {
            report.push(Axiom::Gp5, vec![a]);
        }
    }

    // GP4
    for (a, b, s) in table.defined() {
        if s == zero && (a != zero || b != zero) {
            report.push(Axiom::Gp4, vec![a, b]);
        }
    }

    // GP3: rows and columns are injective on their defined entries.
    for a in 0..n {
        let mut row_seen = vec![usize::MAX; n];
        let mut col_seen = vec![usize::MAX; n];
        for b in 0..n {
            if let Some(s) = table.get(a, b) {
                if row_seen[s] != usize::MAX {
                    report.push(Axiom::Gp3, vec![a, row_seen[s], b]);
                } else {
                    row_seen[s] = b;
                }
            }
            if let Some(s) = table.get(b, a) {
                if col_seen[s] != usize::MAX {
                    report.push(Axiom::Gp3, vec![col_seen[s], b, a]);
                } else {
                    col_seen[s] = b;
                }
            }
        }
    }

    // GP2: a + b = d + a = b + e for some d, e.
    let (right_sums, left_sums) = sum_sets(table);
    for (a, b, s) in table.defined() {
        if !right_sums[a].contains(s) || !left_sums[b].contains(s) {
            report.push(Axiom::Gp2, vec![a, b]);
        }
    }

    check_associativity(table, Axiom::Gp1, &mut report);
    Ok(report)
}

/// Checks axioms (i)–(iv) of a pseudo effect algebra on a raw table.
pub fn verify_pea_table(table: &PartialTable, zero: usize, top: usize) -> Result<AxiomReport, AlgebraError> {
    let n = table.size();
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    for e in [zero, top] {
        if e >= n {
            return Err(AlgebraError::ElementOutOfRange { element: e, size: n });
        }
    }
    let mut report = AxiomReport::default();
    check_associativity(table, Axiom::PeaAssociativity, &mut report);
    check_complements(table, top, &mut report);
    let (right_sums, left_sums) = sum_sets(table);
    for (a, b, s) in table.defined() {
        if !right_sums[a].contains(s) || !left_sums[b].contains(s) {
            report.push(Axiom::PeaConjugates, vec![a, b]);
        }
    }
    check_top_absorbing(table, zero, top, &mut report);
    Ok(report)
}

/// Axiom (ii) and (iv) only. Used when the table already satisfies GP1 and
/// GP2, which coincide with (i) and (iii).
pub(crate) fn verify_pea_remaining(table: &PartialTable, zero: usize, top: usize) -> AxiomReport {
    let mut report = AxiomReport::default();
    check_complements(table, top, &mut report);
    check_top_absorbing(table, zero, top, &mut report);
    report
}

fn check_complements(table: &PartialTable, top: usize, report: &mut AxiomReport) {
    let n = table.size();
    for a in 0..n {
        let right: Vec<usize> = (0..n).filter(|&d| table.get(a, d) == Some(top)).collect();
        let left: Vec<usize> = (0..n).filter(|&e| table.get(e, a) == Some(top)).collect();
        if right.len() != 1 || left.len() != 1 {
            report.push(Axiom::PeaComplements, vec![a]);
        }
    }
}

fn check_top_absorbing(table: &PartialTable, zero: usize, top: usize, report: &mut AxiomReport) {
    for a in 0..table.size() {
        if a != zero && (table.is_defined(top, a) || table.is_defined(a, top)) {
            report.push(Axiom::PeaTopAbsorbing, vec![a]);
        }
    }
}

/// For each `a`: the set of sums `d + a` (column) and `a + e` (row).
fn sum_sets(table: &PartialTable) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let n = table.size();
    let mut right_sums = vec![FixedBitSet::with_capacity(n); n];
    let mut left_sums = vec![FixedBitSet::with_capacity(n); n];
    for (a, b, s) in table.defined() {
        right_sums[b].insert(s);
        left_sums[a].insert(s);
    }
    (right_sums, left_sums)
}

fn check_associativity(table: &PartialTable, tag: Axiom, report: &mut AxiomReport) {
    let n = table.size();
    for a in 0..n {
        for b in 0..n {
            let ab = table.get(a, b);
            for c in 0..n {
                let bc = table.get(b, c);
                if ab.is_none() && bc.is_none() {
                    continue;
                }
                let left = ab.and_then(|ab| table.get(ab, c));
                let right = bc.and_then(|bc| table.get(a, bc));
                if left != right {
                    report.push(tag, vec![a, b, c]);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> PartialTable {
        PartialTable::from_fn(k, |a, b| (a + b < k).then_some(a + b)).unwrap()
    }

    #[test]
    fn chain_passes_gpea() {
        assert!(verify_gpea_axioms(&chain(3), 0).unwrap().passed());
    }

    #[test]
    fn gp4_violation_on_inverse_pair() {
        let t = PartialTable::from_rows(&[vec![Some(0), Some(1)], vec![Some(1), Some(0)]]).unwrap();
        let r = verify_gpea_axioms(&t, 0).unwrap();
        assert!(r.violations.contains(&Violation { axiom: Axiom::Gp4, witness: vec![1, 1] }));
    }

    #[test]
    fn gp5_violation_on_missing_unit() {
        let t = PartialTable::from_rows(&[vec![Some(0), None], vec![Some(1), None]]).unwrap();
        let r = verify_gpea_axioms(&t, 0).unwrap();
        assert!(r.violated(Axiom::Gp5));
    }

    #[test]
    fn zero_out_of_range_is_structural() {
        assert!(verify_gpea_axioms(&chain(2), 7).is_err());
    }

    #[test]
    fn chain_pea_axioms() {
        assert!(verify_pea_table(&chain(4), 0, 3).unwrap().passed());
        // top = 1 on C3: 2 has no complement
        let r = verify_pea_table(&chain(3), 0, 1).unwrap();
        assert!(r.violated(Axiom::PeaComplements));
    }

    #[test]
    fn top_equal_zero_is_axiom_failure() {
        let r = verify_pea_table(&chain(2), 0, 0).unwrap();
        assert!(!r.passed());
        assert!(r.violated(Axiom::PeaComplements) || r.violated(Axiom::PeaTopAbsorbing));
    }

    #[test]
    fn sparse_perturbation_never_panics() {
        let mut t = chain(4);
        t.set(1, 1, None);
        let r = verify_gpea_axioms(&t, 0).unwrap();
        assert!(r.violations.iter().all(|v| matches!(v.axiom, Axiom::Gp1 | Axiom::Gp2)));
    }
}
