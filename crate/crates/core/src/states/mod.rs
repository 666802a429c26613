//! States on finite pseudo effect algebras, in exact rational arithmetic.
//!
//! The additivity equalities are brought to reduced row echelon form, which
//! writes every value as an affine function of a few free parameters. The
//! state space is then the polytope cut out by `0 ≤ s(x) ≤ 1` in parameter
//! space; its vertices are found by trying every choice of tight bounds.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::Pea;
use crate::limits::Limits;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("carrier of {size} elements exceeds the state cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("{count} vertex candidates exceed the enumeration limit")]
    TooManyCandidates { count: u128 },
    #[error("{0} values given for carrier of size {1}")]
    Length(usize, usize),
}

/// Why a candidate map is not a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateViolation {
    OutOfRange(usize),
    TopNotOne,
    Additivity { a: usize, b: usize },
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `Ok(())` when `values` is a state; otherwise the first violation.
pub fn is_state(p: &Pea, values: &[Rational]) -> Result<Result<(), StateViolation>, StateError> {
    if values.len() != p.size() {
        return Err(StateError::Length(values.len(), p.size()));
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    if let Some(x) = values.iter().position(|v| *v < zero || *v > one) {
        return Ok(Err(StateViolation::OutOfRange(x)));
    }
    if values[p.top()] != one {
        return Ok(Err(StateViolation::TopNotOne));
    }
    for (a, b, s) in p.gpea().table().defined() {
        if &values[a] + &values[b] != values[s] {
            return Ok(Err(StateViolation::Additivity { a, b }));
        }
    }
    Ok(Ok(()))
}

/// `{ a : s(a) = 0 }`.
pub fn kernel(values: &[Rational]) -> Vec<usize> {
    values.iter().positions(|v| v.is_zero()).collect()
}

/// Affine parametrization `s = offset + Σ t_k · directions[k]` of the
/// solutions of the equality system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub offset: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

/// Extreme points of the state space, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub vertices: Vec<Vec<Rational>>,
    /// `None` when the equalities alone are inconsistent.
    pub parametrization: Option<Parametrization>,
}

impl StateSpace {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.parametrization.as_ref().map(|p| p.directions.len())
    }
}

const CANDIDATE_LIMIT: u128 = 2_000_000;

pub fn find_states(p: &Pea, limits: &Limits) -> Result<StateSpace, StateError> {
    let n = p.size();
    if n > limits.state_carrier {
        return Err(StateError::TooLarge { size: n, cap: limits.state_carrier });
    }
    // rows over n variables plus a constant column
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut seen = BTreeSet::new();
    for (a, b, s) in p.gpea().table().defined() {
        let mut row = vec![Rational::zero(); n + 1];
        row[a] += Rational::one();
        row[b] += Rational::one();
        row[s] -= Rational::one();
        if row.iter().any(|v| !v.is_zero()) && seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    let mut top = vec![Rational::zero(); n + 1];
    top[p.top()] = Rational::one();
    top[n] = Rational::one();
    rows.push(top);

    let Some(param) = solve_affine(rows, n) else {
        return Ok(StateSpace { vertices: Vec::new(), parametrization: None });
    };
    let vertices = enumerate_vertices(&param)?;
    Ok(StateSpace { vertices, parametrization: Some(param) })
}

/// RREF of `rows` (each `n` coefficients then the right-hand side).
fn solve_affine(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Parametrization> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &lead;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[k].iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut offset = vec![Rational::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        offset[c] = rows[k][n].clone();
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); n];
            d[f] = Rational::one();
            for (k, &c) in pivots.iter().enumerate() {
                d[c] = -rows[k][f].clone();
            }
            d
        })
        .collect();
    Some(Parametrization { offset, directions })
}

/// Vertices of `{ t : 0 ≤ offset + D t ≤ 1 }` mapped back to state values.
fn enumerate_vertices(param: &Parametrization) -> Result<Vec<Vec<Rational>>, StateError> {
    let n = param.offset.len();
    let d = param.directions.len();
    let value = |t: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|x| {
                let mut v = param.offset[x].clone();
                for (k, tk) in t.iter().enumerate() {
                    v += &param.directions[k][x] * tk;
                }
                v
            })
            .collect()
    };
    let in_box = |s: &[Rational]| s.iter().all(|v| !v.is_negative() && *v <= Rational::one());
    if d == 0 {
        let s = value(&[]);
        return Ok(if in_box(&s) { vec![s] } else { Vec::new() });
    }
    // constraint (x, bound): offset_x + Σ D_kx t_k = bound, for coordinates
    // that actually depend on t
    let constraints: Vec<(usize, Rational)> = (0..n)
        .filter(|&x| param.directions.iter().any(|dir| !dir[x].is_zero()))
        .flat_map(|x| [(x, Rational::zero()), (x, Rational::one())])
        .collect();
    let count = binomial(constraints.len() as u128, d as u128);
    if count > CANDIDATE_LIMIT {
        return Err(StateError::TooManyCandidates { count });
    }
    let mut out = BTreeSet::new();
    for choice in constraints.iter().combinations(d) {
        let system: Vec<Vec<Rational>> = choice
            .iter()
            .map(|(x, bound)| {
                let mut row: Vec<Rational> = param.directions.iter().map(|dir| dir[*x].clone()).collect();
                row.push(bound - &param.offset[*x]);
                row
            })
            .collect();
        if let Some(t) = solve_square(system, d) {
            let s = value(&t);
            if in_box(&s) {
                out.insert(s);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Unique solution of a square system, if the matrix is nonsingular.
fn solve_square(rows: Vec<Vec<Rational>>, d: usize) -> Option<Vec<Rational>> {
    let param = solve_affine(rows, d)?;
    param.directions.is_empty().then_some(param.offset)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
