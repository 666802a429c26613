use crate::algebra::{Gpea, Pea};

/// Per-element invariants preserved by any isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Signature {
    row_defined: usize,
    column_defined: usize,
    below: usize,
    above: usize,
    self_sum: bool,
}

fn signatures(e: &Gpea) -> Vec<Signature> {
    let t = e.table();
    e.elements()
        .map(|a| Signature {
            row_defined: e.elements().filter(|&b| t.is_defined(a, b)).count(),
            column_defined: e.elements().filter(|&b| t.is_defined(b, a)).count(),
            below: e.order().down_set(a).count_ones(..),
            above: e.order().up_set(a).count_ones(..),
            self_sum: t.is_defined(a, a),
        })
        .collect()
}

/// `map` is a bijection preserving and reflecting definedness and values.
pub fn is_isomorphism(e: &Gpea, f: &Gpea, map: &[usize]) -> bool {
    let n = e.size();
    if f.size() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    e.elements().all(|a| {
        e.elements()
            .all(|b| e.add(a, b).map(|s| map[s]) == f.add(map[a], map[b]))
    })
}

/// Backtracking search for an isomorphism `E -> F`, pruned by degree
/// signatures of the definedness graph. Returns `map[a]` = image of `a`.
pub fn find_isomorphism(e: &Gpea, f: &Gpea) -> Option<Vec<usize>> {
    search(e, f, &[(e.zero(), f.zero())])
}

/// As [`find_isomorphism`], additionally sending top to top.
pub fn find_pea_isomorphism(e: &Pea, f: &Pea) -> Option<Vec<usize>> {
    search(e.gpea(), f.gpea(), &[(e.zero(), f.zero()), (e.top(), f.top())])
}

fn search(e: &Gpea, f: &Gpea, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = e.size();
    if f.size() != n {
        return None;
    }
    let se = signatures(e);
    let sf = signatures(f);
    let mut sorted_e = se.clone();
    let mut sorted_f = sf.clone();
    let key = |s: &Signature| (s.row_defined, s.column_defined, s.below, s.above, s.self_sum);
    sorted_e.sort_by_key(key);
    sorted_f.sort_by_key(key);
    if sorted_e != sorted_f {
        return None;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for &(a, b) in fixed {
        if se[a] != sf[b] || (map[a] != usize::MAX && map[a] != b) {
            return None;
        }
        if map[a] == usize::MAX {
            if used[b] {
                return None;
            }
            map[a] = b;
            used[b] = true;
            order.push(a);
        }
    }
    for &a in &order {
        if !consistent(e, f, &map, a) {
            return None;
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&a| map[a] == usize::MAX).collect();
    if assign(e, f, &se, &sf, &rest, 0, &mut map, &mut used) {
        debug_assert!(is_isomorphism(e, f, &map));
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    e: &Gpea,
    f: &Gpea,
    se: &[Signature],
    sf: &[Signature],
    rest: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&a) = rest.get(k) else {
        return true;
    };
    for b in 0..f.size() {
        if used[b] || se[a] != sf[b] {
            continue;
        }
        map[a] = b;
        used[b] = true;
        if consistent(e, f, map, a) && assign(e, f, se, sf, rest, k + 1, map, used) {
            return true;
        }
        map[a] = usize::MAX;
        used[b] = false;
    }
    false
}

/// Checks every fully assigned pair and every sum landing on `a`.
fn consistent(e: &Gpea, f: &Gpea, map: &[usize], a: usize) -> bool {
    let assigned = |x: usize| map[x] != usize::MAX;
    for y in e.elements().filter(|&y| assigned(y)) {
        for (x, z) in [(a, y), (y, a)] {
            let fe = e.add(x, z);
            let ff = f.add(map[x], map[z]);
            match (fe, ff) {
                (None, None) => {}
                (Some(s), Some(t)) => {
                    if assigned(s) && map[s] != t {
                        return false;
                    }
                    // t already used as image of some other element
                    if !assigned(s) && map.contains(&t) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    for (x, y, s) in e.table().defined() {
        if s == a && assigned(x) && assigned(y) && f.add(map[x], map[y]) != Some(map[a]) {
            return false;
        }
    }
    true
}
