use crate::algebra::AlgebraError;

const UNDEFINED: u32 = u32::MAX;

/// Square partial addition table over the carrier `0..size`.
///
/// Entry `(a, b)` holds the index of `a + b`, or nothing when the sum is
/// undefined. Entries are bounds-checked on every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialTable {
    size: usize,
    entries: Vec<u32>,
}

impl PartialTable {
    /// A table of the given size with every sum undefined.
    pub fn undefined(size: usize) -> Self {
        PartialTable {
            size,
            entries: vec![UNDEFINED; size * size],
        }
    }

    pub fn from_fn<F>(size: usize, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let mut table = Self::undefined(size);
        for a in 0..size {
            for b in 0..size {
                table.try_set(a, b, f(a, b))?;
            }
        }
        Ok(table)
    }

    pub fn from_rows(rows: &[Vec<Option<usize>>]) -> Result<Self, AlgebraError> {
        let size = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != size) {
            return Err(AlgebraError::RowLength {
                row,
                found: r.len(),
                expected: size,
            });
        }
        Self::from_fn(size, |a, b| rows[a][b])
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.entries[a * self.size + b];
        (v != UNDEFINED).then_some(v as usize)
    }

    #[inline]
    pub fn is_defined(&self, a: usize, b: usize) -> bool {
        self.entries[a * self.size + b] != UNDEFINED
    }

    pub fn try_set(&mut self, a: usize, b: usize, value: Option<usize>) -> Result<(), AlgebraError> {
        let n = self.size;
        if a >= n || b >= n {
            return Err(AlgebraError::ElementOutOfRange {
                element: a.max(b),
                size: n,
            });
        }
        let raw = match value {
            Some(v) if v >= n => {
                return Err(AlgebraError::EntryOutOfRange {
                    row: a,
                    column: b,
                    value: v,
                    size: n,
                })
            }
            Some(v) => v as u32,
            None => UNDEFINED,
        };
        self.entries[a * n + b] = raw;
        Ok(())
    }

    /// Panics when an index is out of range.
    pub fn set(&mut self, a: usize, b: usize, value: Option<usize>) {
        self.try_set(a, b, value).expect("table index in range")
    }

    /// All defined `(a, b, a + b)` triples in row-major order.
    pub fn defined(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.size;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != UNDEFINED)
            .map(move |(k, &v)| (k / n, k % n, v as usize))
    }

    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.get(a, b)).collect())
            .collect()
    }

    /// Restriction to the listed elements, renumbered in list order.
    /// Sums leaving the subset become undefined.
    pub fn restrict(&self, keep: &[usize]) -> PartialTable {
        let mut position = vec![usize::MAX; self.size];
        for (k, &x) in keep.iter().enumerate() {
            position[x] = k;
        }
        let mut out = PartialTable::undefined(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if let Some(s) = self.get(a, b) {
                    if position[s] != usize::MAX {
                        out.set(i, j, Some(position[s]));
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for PartialTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PartialTable({})", self.size)?;
        for a in 0..self.size {
            for b in 0..self.size {
                match self.get(a, b) {
                    Some(v) => write!(f, " {v:>3}")?,
                    None => write!(f, "   -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range_entry_is_structural() {
        let err = PartialTable::from_rows(&[vec![Some(0), Some(5)], vec![Some(1), None]]).unwrap_err();
        assert!(matches!(err, AlgebraError::EntryOutOfRange { value: 5, .. }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = PartialTable::from_rows(&[vec![Some(0), Some(1)], vec![Some(1)]]).unwrap_err();
        assert!(matches!(err, AlgebraError::RowLength { row: 1, .. }));
    }

    #[test]
    fn restrict_drops_escaping_sums() {
        let t = PartialTable::from_fn(3, |a, b| (a + b <= 2).then_some(a + b)).unwrap();
        let r = t.restrict(&[0, 1]);
        assert_eq!(r.get(1, 0), Some(1));
        assert_eq!(r.get(1, 1), None);
    }
}
