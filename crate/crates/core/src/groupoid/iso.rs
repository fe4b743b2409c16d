//! Isomorphism search between small Cayley tables.
//!
//! The search picks a small generating set of the source table, tries every
//! compatible tuple of images for it and extends each candidate through the
//! product closure. A tuple either forces a complete bijection, which is then
//! verified, or runs into a conflict. Tables without a generating set of at
//! most three elements fall back to plain backtracking.

use super::ops::{closure, greedy_generating_set};
use super::CayleyTable;

const NONE: usize = usize::MAX;
const MAX_GENERATOR_EXTENSION: usize = 3;

/// Element invariants preserved by every isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Signature {
    idempotent: bool,
    square: bool,
    monogenic: usize,
    commuting: usize,
    left_fixed: usize,
    right_fixed: usize,
}

fn signatures(t: &CayleyTable) -> Vec<Signature> {
    let n = t.order();
    (0..n)
        .map(|x| Signature {
            idempotent: t.mul(x, x) == x,
            square: t.mul(t.mul(x, x), x) == x,
            monogenic: closure(t, &[x]).len(),
            commuting: (0..n).filter(|&y| t.mul(x, y) == t.mul(y, x)).count(),
            left_fixed: (0..n).filter(|&y| t.mul(x, y) == y).count(),
            right_fixed: (0..n).filter(|&y| t.mul(y, x) == y).count(),
        })
        .collect()
}

/// Returns a bijection `phi` with `phi(x·y) = phi(x)∘phi(y)`, or `None` once
/// the search space is exhausted. Tables of different order are never
/// isomorphic.
pub fn find_isomorphism(t1: &CayleyTable, t2: &CayleyTable) -> Option<Vec<usize>> {
    let n = t1.order();
    if n != t2.order() {
        return None;
    }
    if t1.entries() == t2.entries() {
        return Some((0..n).collect());
    }
    let sig1 = signatures(t1);
    let sig2 = signatures(t2);
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }

    let gens = generating_set(t1);
    if gens.len() <= MAX_GENERATOR_EXTENSION {
        let mut images = Vec::with_capacity(gens.len());
        extend_generators(t1, t2, &gens, &sig1, &sig2, &mut images)
    } else {
        let mut phi = vec![NONE; n];
        let mut used = vec![false; n];
        backtrack(t1, t2, &sig1, &sig2, 0, &mut phi, &mut used).then_some(phi)
    }
}

/// A generating pair when one exists, otherwise a greedy generating set.
fn generating_set(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    if n == 1 {
        return vec![0];
    }
    for x in 0..n {
        for y in x + 1..n {
            if closure(t, &[x, y]).len() == n {
                return vec![x, y];
            }
        }
    }
    greedy_generating_set(t)
}

fn extend_generators(
    t1: &CayleyTable,
    t2: &CayleyTable,
    gens: &[usize],
    sig1: &[Signature],
    sig2: &[Signature],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        return extend_by_closure(t1, t2, gens, images);
    }
    let g = gens[images.len()];
    for c in 0..t2.order() {
        if sig1[g] != sig2[c] || images.contains(&c) {
            continue;
        }
        images.push(c);
        if let Some(phi) = extend_generators(t1, t2, gens, sig1, sig2, images) {
            return Some(phi);
        }
        images.pop();
    }
    None
}

/// Propagates `gens[i] ↦ images[i]` through all products; succeeds only with
/// a verified isomorphism.
fn extend_by_closure(
    t1: &CayleyTable,
    t2: &CayleyTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = t1.order();
    let mut phi = vec![NONE; n];
    let mut inv = vec![NONE; n];
    let mut known = Vec::with_capacity(n);
    for (&g, &c) in gens.iter().zip(images) {
        phi[g] = c;
        inv[c] = g;
        known.push(g);
    }
    let mut i = 0;
    while i < known.len() {
        let x = known[i];
        for j in 0..=i {
            let y = known[j];
            for (u, v) in [(x, y), (y, x)] {
                let z = t1.mul(u, v);
                let w = t2.mul(phi[u], phi[v]);
                if phi[z] == NONE {
                    if inv[w] != NONE {
                        return None;
                    }
                    phi[z] = w;
                    inv[w] = z;
                    known.push(z);
                } else if phi[z] != w {
                    return None;
                }
            }
        }
        i += 1;
    }
    (known.len() == n && is_isomorphism(t1, t2, &phi)).then_some(phi)
}

fn backtrack(
    t1: &CayleyTable,
    t2: &CayleyTable,
    sig1: &[Signature],
    sig2: &[Signature],
    x: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = t1.order();
    if x == n {
        return is_isomorphism(t1, t2, phi);
    }
    for c in 0..n {
        if used[c] || sig1[x] != sig2[c] {
            continue;
        }
        phi[x] = c;
        used[c] = true;
        if consistent(t1, t2, phi, x) && backtrack(t1, t2, sig1, sig2, x + 1, phi, used) {
            return true;
        }
        used[c] = false;
        phi[x] = NONE;
    }
    false
}

/// Products among the first `x + 1` elements that involve `x` agree with
/// the partial map wherever it is defined.
fn consistent(t1: &CayleyTable, t2: &CayleyTable, phi: &[usize], x: usize) -> bool {
    for y in 0..=x {
        for (u, v) in [(x, y), (y, x)] {
            let z = t1.mul(u, v);
            if phi[z] != NONE && phi[z] != t2.mul(phi[u], phi[v]) {
                return false;
            }
        }
    }
    true
}

pub fn is_isomorphism(t1: &CayleyTable, t2: &CayleyTable, phi: &[usize]) -> bool {
    let n = t1.order();
    if phi.len() != n || t2.order() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in phi {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| phi[t1.mul(x, y)] == t2.mul(phi[x], phi[y])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(m: usize, a: usize, b: usize) -> CayleyTable {
        CayleyTable::from_fn(m, |x, y| (a * x + b * y) % m).unwrap()
    }

    #[test]
    fn identity_on_equal_tables() {
        let t = lin(13, 11, 3);
        assert_eq!(find_isomorphism(&t, &t), Some((0..13).collect()));
    }

    #[test]
    fn relabelled_copy_is_found() {
        let t = lin(13, 11, 3);
        let phi: Vec<usize> = (0..13).map(|x| (5 * x + 7) % 13).collect();
        let s = t.relabel(&phi).unwrap();
        let found = find_isomorphism(&t, &s).unwrap();
        assert!(is_isomorphism(&t, &s, &found));
    }

    #[test]
    fn dual_linear_tables_are_not_isomorphic() {
        assert_eq!(find_isomorphism(&lin(13, 11, 3), &lin(13, 3, 11)), None);
        assert_eq!(find_isomorphism(&lin(5, 2, 4), &lin(7, 2, 4)), None);
    }

    #[test]
    fn backtracking_agrees_with_generator_extension() {
        let t = lin(5, 2, 4);
        let phi = [2, 4, 1, 0, 3];
        let s = t.relabel(&phi).unwrap();
        let (sig1, sig2) = (signatures(&t), signatures(&s));
        let mut p = vec![NONE; 5];
        let mut used = vec![false; 5];
        assert!(backtrack(&t, &s, &sig1, &sig2, 0, &mut p, &mut used));
        assert!(is_isomorphism(&t, &s, &p));
    }
}
