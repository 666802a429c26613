//! Small textual specs used on the command line.

use kitelab::{Gpea, Permutation};

/// `id`, `cycle` (`i ↦ i − 1`), `cycle+` (`i ↦ i + 1`), `shift:K`, `swap`
/// (exchanges 0 and 1), or an image list such as `2,0,1`.
pub fn parse_permutation(spec: &str, n: usize) -> Result<Permutation, String> {
    let spec = spec.trim();
    let checked = |p: Permutation| {
        if p.len() == n {
            Ok(p)
        } else {
            Err(format!("permutation `{spec}` has {} points, expected {n}", p.len()))
        }
    };
    match spec {
        "id" => Ok(Permutation::identity(n)),
        "cycle" => Ok(Permutation::cycle_down(n)),
        "cycle+" => Ok(Permutation::shift(n, 1)),
        "swap" if n >= 2 => Ok(Permutation::from_cycles(n, &[vec![0, 1]]).expect("two points")),
        "swap" => Err("`swap` needs at least two indices".into()),
        s if s.starts_with("shift:") => {
            let k: i64 = s[6..].parse().map_err(|_| format!("bad shift in `{s}`"))?;
            Ok(Permutation::shift(n, k))
        }
        s => {
            let image = s
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| format!("bad index `{t}` in `{s}`")))
                .collect::<Result<Vec<_>, _>>()?;
            checked(Permutation::from_image(image).map_err(|e| e.to_string())?)
        }
    }
}

/// Elements by index or label, comma separated.
pub fn parse_elements(spec: &str, e: &Gpea) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            e.elements()
                .find(|&x| e.label(x) == t)
                .or_else(|| t.parse::<usize>().ok().filter(|&x| x < e.size()))
                .ok_or_else(|| format!("no element `{t}`"))
        })
        .collect()
}

/// A kite element written `L(1,0)` or `U(3)`; coordinates are parsed by
/// `coord`.
pub fn parse_kite_element<T>(
    spec: &str,
    coord: impl Fn(&str) -> Result<T, String>,
) -> Result<(kitelab::Sort, Vec<T>), String> {
    let spec = spec.trim();
    let sort = match spec.chars().next() {
        Some('L') => kitelab::Sort::Lower,
        Some('U') => kitelab::Sort::Upper,
        _ => return Err(format!("`{spec}` must start with L or U")),
    };
    let inner = spec[1..]
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("`{spec}` must look like L(…) or U(…)"))?;
    let coords = inner.split(',').map(|t| coord(t.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok((sort, coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_specs() {
        assert_eq!(parse_permutation("cycle", 3).unwrap().image(), &[2, 0, 1]);
        assert_eq!(parse_permutation("cycle+", 3).unwrap().image(), &[1, 2, 0]);
        assert_eq!(parse_permutation("swap", 3).unwrap().image(), &[1, 0, 2]);
        assert_eq!(parse_permutation("1,2,0", 3).unwrap().image(), &[1, 2, 0]);
        assert!(parse_permutation("1,2", 3).is_err());
        assert!(parse_permutation("0,0,1", 3).is_err());
    }

    #[test]
    fn kite_element_specs() {
        let (s, c) = parse_kite_element("U(5, 2)", |t| t.parse::<u64>().map_err(|e| e.to_string())).unwrap();
        assert_eq!(s, kitelab::Sort::Upper);
        assert_eq!(c, vec![5, 2]);
        assert!(parse_kite_element("X(1)", |t| t.parse::<u64>().map_err(|e| e.to_string())).is_err());
    }
}
