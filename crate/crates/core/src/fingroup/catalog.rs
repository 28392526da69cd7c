//! Small named groups and a name parser for them.

use super::{constructions, FinGroup};
use crate::error::{Error, Result};

pub fn trivial() -> FinGroup {
    FinGroup::from_flat(1, vec![0], "1")
}

/// `Z/n` with element `k` at index `k`.
pub fn cyclic(n: usize) -> FinGroup {
    assert!(n >= 1, "cyclic group of order 0");
    FinGroup::from_fn(n, format!("Z{n}"), |a, b| (a + b) % n)
}

/// `Z/2 × Z/2`, indices read as two bits.
pub fn klein4() -> FinGroup {
    FinGroup::from_fn(4, "V4", |a, b| a ^ b)
}

/// The symmetric group on `n` points. Permutations are listed in
/// lexicographic order and multiplied as functions: `(p·q)(i) = p(q(i))`.
pub fn symmetric(n: usize) -> FinGroup {
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    FinGroup::from_fn(perms.len(), format!("S{n}"), |a, b| {
        let prod: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        index(&prod)
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Symmetries of the regular `n`-gon, order `2n`. Element `r^k s^e` sits at
/// index `k + n·e`.
pub fn dihedral(n: usize) -> FinGroup {
    assert!(n >= 1);
    FinGroup::from_fn(2 * n, format!("D{n}"), |a, b| {
        let (i, e) = (a % n, a / n);
        let (j, f) = (b % n, b / n);
        let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
        k + n * ((e + f) % 2)
    })
}

/// The quaternion group: `a^k b^e` at index `k + 4e`, with `b² = a²` and
/// `b a b⁻¹ = a⁻¹`.
pub fn quaternion() -> FinGroup {
    FinGroup::from_fn(8, "Q8", |x, y| {
        let (i, e) = (x % 4, x / 4);
        let (j, f) = (y % 4, y / 4);
        if e == 0 {
            (i + j) % 4 + 4 * f
        } else if f == 0 {
            (i + 4 - j) % 4 + 4
        } else {
            (i + 4 - j + 2) % 4
        }
    })
}

/// The dicyclic group of order `4n`: `a^(2n) = 1`, `x² = a^n`,
/// `x a x⁻¹ = a⁻¹`. Element `a^k x^e` sits at index `k + 2n·e`.
pub fn dicyclic(n: usize) -> FinGroup {
    assert!(n >= 1);
    let m = 2 * n;
    FinGroup::from_fn(2 * m, format!("Dic{n}"), |a, b| {
        let (i, e) = (a % m, a / m);
        let (j, f) = (b % m, b / m);
        let mut k = if e == 0 { i + j } else { i + m - j };
        if e == 1 && f == 1 {
            k += n;
        }
        k % m + m * ((e + f) % 2)
    })
}

pub fn product(a: &FinGroup, b: &FinGroup) -> FinGroup {
    let pb = constructions::direct_product(&a.clone().into_arc(), &b.clone().into_arc());
    (*pb.group).clone()
}

/// Parses names such as `Z4`, `Z/4`, `V4`, `S3`, `D4`, `Q8`, `1` and products
/// like `Z2xZ4`.
pub fn by_name(name: &str) -> Result<FinGroup> {
    let name = name.trim();
    if let Some((l, r)) = name.split_once(['x', '×']) {
        let g = product(&by_name(l)?, &by_name(r)?);
        return Ok(g.with_name(name));
    }
    let compact = name.replace('/', "");
    let parse_n = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("unknown group name '{name}'")))
    };
    match compact.as_str() {
        "1" | "trivial" => Ok(trivial()),
        "V4" | "K4" => Ok(klein4()),
        "Q8" => Ok(quaternion()),
        s if s.starts_with('Z') || s.starts_with('C') => {
            let n = parse_n(&s[1..])?;
            Ok(if n == 1 { trivial() } else { cyclic(n) })
        }
        s if s.starts_with('S') => {
            let n = parse_n(&s[1..])?;
            if n > 5 {
                return Err(Error::BoundExceeded {
                    what: format!("S{n}"),
                    size: (1..=n).product(),
                    bound: 120,
                });
            }
            Ok(symmetric(n))
        }
        s if s.starts_with("Dic") => Ok(dicyclic(parse_n(&s[3..])?)),
        s if s.starts_with('D') => Ok(dihedral(parse_n(&s[1..])?)),
        _ => Err(Error::Parse(format!("unknown group name '{name}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_groups() {
        for g in [
            trivial(),
            cyclic(5),
            klein4(),
            symmetric(3),
            symmetric(4),
            dihedral(4),
            quaternion(),
            dicyclic(3),
        ] {
            g.check().unwrap();
        }
    }

    #[test]
    fn known_invariants() {
        assert_eq!(symmetric(3).order(), 6);
        assert!(!symmetric(3).is_abelian());
        assert_eq!(klein4().order_profile(), vec![1, 2, 2, 2]);
        assert_eq!(quaternion().order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(dihedral(4).order_profile(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn parses_names() {
        assert_eq!(by_name("Z/4").unwrap().order(), 4);
        assert_eq!(by_name("Z2xZ4").unwrap().order(), 8);
        assert_eq!(by_name("1").unwrap().order(), 1);
        assert!(by_name("Q9").is_err());
        assert!(by_name("Z0").is_err());
    }
}
