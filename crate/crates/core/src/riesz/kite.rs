use std::collections::BTreeSet;

use thiserror::Error;

use crate::kite::{Kite, KiteElement, KiteError, RieszBase, Sort};
use crate::riesz::{DecompositionTable, RieszProperty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Kite(#[from] KiteError),
    #[error("a1 + a2 and b1 + b2 are not both defined and equal")]
    NotEqual,
    #[error("no upper bound of a_{index} and b_{index} in the base")]
    NoUpperBound { index: i64 },
    #[error("base has no {property} table at index {index}")]
    Base { property: RieszProperty, index: i64 },
    #[error("a_{index} + g_λ⁻¹({index}) is undefined in the base")]
    Undefined { index: i64 },
}

type Elem<B> = <B as crate::kite::KiteBase>::Elem;
type Table<B> = DecompositionTable<KiteElement<Elem<B>>>;

/// A decomposition table for `a1 + a2 = b1 + b2` in the kite, assembled
/// coordinatewise from base tables at level `property`.
pub fn kite_rdp_decompose<B: RieszBase>(
    k: &Kite<B>,
    a: [&KiteElement<Elem<B>>; 2],
    b: [&KiteElement<Elem<B>>; 2],
    property: RieszProperty,
) -> Result<Table<B>, DecomposeError> {
    let left = k.add(a[0], a[1])?;
    let right = k.add(b[0], b[1])?;
    if left.is_none() || left != right {
        return Err(DecomposeError::NotEqual);
    }
    if a == b {
        return Ok(DecompositionTable {
            c11: a[0].clone(),
            c12: k.zero(),
            c21: k.zero(),
            c22: a[1].clone(),
        });
    }
    use Sort::*;
    match (a[0].sort(), a[1].sort(), b[0].sort(), b[1].sort()) {
        (Lower, Lower, Lower, Lower) => lower_case(k, a, b, property),
        (Upper, Lower, Upper, Lower) => upper_lower_case(k, a, b, property),
        (Lower, Upper, Lower, Upper) => lower_upper_case(k, a, b, property),
        (Upper, Lower, Lower, Upper) => mixed_case(k, a, b),
        (Lower, Upper, Upper, Lower) => {
            let t = mixed_case(k, b, a)?;
            Ok(DecompositionTable { c11: t.c11, c12: t.c21, c21: t.c12, c22: t.c22 })
        }
        _ => Err(DecomposeError::NotEqual),
    }
}

fn keys<T>(parts: &[(&KiteElement<T>, Option<&dyn Fn(i64) -> i64>)]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for (x, shift) in parts {
        for &i in x.support().keys() {
            out.insert(shift.map_or(i, |f| f(i)));
        }
    }
    out
}

fn base_table<B: RieszBase>(
    k: &Kite<B>,
    a: [&Elem<B>; 2],
    b: [&Elem<B>; 2],
    property: RieszProperty,
    index: i64,
) -> Result<DecompositionTable<Elem<B>>, DecomposeError> {
    k.base().decompose(a, b, property).ok_or(DecomposeError::Base { property, index })
}

/// `L f1 + L f2 = L g1 + L g2`: coordinatewise.
fn lower_case<B: RieszBase>(
    k: &Kite<B>,
    a: [&KiteElement<Elem<B>>; 2],
    b: [&KiteElement<Elem<B>>; 2],
    property: RieszProperty,
) -> Result<Table<B>, DecomposeError> {
    let mut cols: [Vec<(i64, Elem<B>)>; 4] = Default::default();
    for j in keys(&[(a[0], None), (a[1], None), (b[0], None), (b[1], None)]) {
        let [f1, f2, g1, g2] = [a[0], a[1], b[0], b[1]].map(|x| k.coord(x, j));
        let t = base_table(k, [&f1, &f2], [&g1, &g2], property, j)?;
        for (col, v) in cols.iter_mut().zip([t.c11, t.c12, t.c21, t.c22]) {
            col.push((j, v));
        }
    }
    let [c11, c12, c21, c22] = cols.map(|c| k.element(Lower, c));
    Ok(DecompositionTable { c11: c11?, c12: c12?, c21: c21?, c22: c22? })
}

use Sort::{Lower, Upper};

/// `U a + L f = U b + L g`. With `d_i ≥ a_i, b_i`, the base equation
/// `d/a + f_ρ⁻¹(i) = d/b + g_ρ⁻¹(i)` is decomposed at each index.
fn upper_lower_case<B: RieszBase>(
    k: &Kite<B>,
    a: [&KiteElement<Elem<B>>; 2],
    b: [&KiteElement<Elem<B>>; 2],
    property: RieszProperty,
) -> Result<Table<B>, DecomposeError> {
    let base = k.base();
    let rho = |j: i64| k.rho().apply(j);
    let idx = keys(&[(a[0], None), (b[0], None), (a[1], Some(&rho)), (b[1], Some(&rho))]);
    let (mut c11, mut c12, mut c21, mut c22) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in idx {
        let (ai, bi) = (k.coord(a[0], i), k.coord(b[0], i));
        let j = k.rho().apply_inverse(i);
        let (f, g) = (k.coord(a[1], j), k.coord(b[1], j));
        let d = base.upper_bound(&ai, &bi).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let p = base.left_diff(&d, &ai).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let q = base.left_diff(&d, &bi).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let t = base_table(k, [&p, &f], [&q, &g], property, i)?;
        let top = base.add(&t.c12, &ai).ok_or(DecomposeError::Undefined { index: i })?;
        c11.push((i, top));
        c12.push((j, t.c12));
        c21.push((j, t.c21));
        c22.push((j, t.c22));
    }
    Ok(DecompositionTable {
        c11: k.element(Upper, c11)?,
        c12: k.element(Lower, c12)?,
        c21: k.element(Lower, c21)?,
        c22: k.element(Lower, c22)?,
    })
}

/// `L f + U a = L g + U b`, dual to [`upper_lower_case`] with `a\d`, `b\d`
/// and `λ` in place of `ρ`.
fn lower_upper_case<B: RieszBase>(
    k: &Kite<B>,
    a: [&KiteElement<Elem<B>>; 2],
    b: [&KiteElement<Elem<B>>; 2],
    property: RieszProperty,
) -> Result<Table<B>, DecomposeError> {
    let base = k.base();
    let lambda = |j: i64| k.lambda().apply(j);
    let idx = keys(&[(a[1], None), (b[1], None), (a[0], Some(&lambda)), (b[0], Some(&lambda))]);
    let (mut c11, mut c12, mut c21, mut c22) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in idx {
        let (ai, bi) = (k.coord(a[1], i), k.coord(b[1], i));
        let j = k.lambda().apply_inverse(i);
        let (f, g) = (k.coord(a[0], j), k.coord(b[0], j));
        let d = base.upper_bound(&ai, &bi).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let p = base.right_diff(&ai, &d).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let q = base.right_diff(&bi, &d).ok_or(DecomposeError::NoUpperBound { index: i })?;
        let t = base_table(k, [&f, &p], [&g, &q], property, i)?;
        let top = base.add(&ai, &t.c21).ok_or(DecomposeError::Undefined { index: i })?;
        c11.push((j, t.c11));
        c12.push((j, t.c12));
        c21.push((j, t.c21));
        c22.push((i, top));
    }
    Ok(DecompositionTable {
        c11: k.element(Lower, c11)?,
        c12: k.element(Lower, c12)?,
        c21: k.element(Lower, c21)?,
        c22: k.element(Upper, c22)?,
    })
}

/// `U a + L f = L g + U b`: the closed form `(L g, U⟨a_i + g_λ⁻¹(i)⟩, 0, L f)`.
fn mixed_case<B: RieszBase>(
    k: &Kite<B>,
    a: [&KiteElement<Elem<B>>; 2],
    b: [&KiteElement<Elem<B>>; 2],
) -> Result<Table<B>, DecomposeError> {
    let lambda = |j: i64| k.lambda().apply(j);
    let mut top = Vec::new();
    for i in keys(&[(a[0], None), (b[0], Some(&lambda))]) {
        let ai = k.coord(a[0], i);
        let g = k.coord(b[0], k.lambda().apply_inverse(i));
        top.push((i, k.base().add(&ai, &g).ok_or(DecomposeError::Undefined { index: i })?));
    }
    Ok(DecompositionTable {
        c11: b[0].clone(),
        c12: k.element(Upper, top)?,
        c21: k.zero(),
        c22: a[1].clone(),
    })
}
