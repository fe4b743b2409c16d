use std::collections::BTreeSet;

use serde::Serialize;

use super::{is_quadratical, CayleyTable};
use crate::error::{Error, Result};

/// The dual groupoid: `x∗y = y·x`.
pub fn dual(t: &CayleyTable) -> CayleyTable {
    let n = t.order();
    let d = CayleyTable::from_fn(n, |x, y| t.mul(y, x)).expect("dual of a well-formed table");
    match t.labels() {
        Some(l) => d.with_labels(l.to_vec()).expect("labels already validated"),
        None => d,
    }
}

/// Componentwise product; the pair `(x1, x2)` has index `x1·n2 + x2`.
pub fn direct_product(t1: &CayleyTable, t2: &CayleyTable) -> CayleyTable {
    let n2 = t2.order();
    let n = t1.order() * n2;
    let p = CayleyTable::from_fn(n, |x, y| {
        t1.mul(x / n2, y / n2) * n2 + t2.mul(x % n2, y % n2)
    })
    .expect("product of well-formed tables");
    match (t1.labels(), t2.labels()) {
        (Some(l1), Some(l2)) => {
            let labels = (0..n).map(|i| format!("({},{})", l1[i / n2], l2[i % n2]));
            p.with_labels(labels).expect("pair labels are distinct")
        }
        _ => p,
    }
}

/// The least subset containing `seeds` that is closed under the product.
pub fn generated_subgroupoid(t: &CayleyTable, seeds: &[usize]) -> Result<BTreeSet<usize>> {
    let n = t.order();
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("seed set is empty".into()));
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s >= n) {
        return Err(Error::InvalidArgument(format!("seed {bad} out of range for order {n}")));
    }
    Ok(closure(t, seeds).into_iter().collect())
}

/// Closure as an insertion-ordered list.
pub(crate) fn closure(t: &CayleyTable, seeds: &[usize]) -> Vec<usize> {
    let mut member = vec![false; t.order()];
    let mut elems = Vec::new();
    for &s in seeds {
        if !std::mem::replace(&mut member[s], true) {
            elems.push(s);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for j in 0..=i {
            let y = elems[j];
            for v in [t.mul(x, y), t.mul(y, x)] {
                if !std::mem::replace(&mut member[v], true) {
                    elems.push(v);
                }
            }
        }
        i += 1;
    }
    elems
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoGenerationReport {
    /// `generates[x][y]` iff `{x, y}` generates the whole groupoid.
    pub generates: Vec<Vec<bool>>,
    /// Every pair of distinct elements generates (vacuous for order 1).
    pub all_distinct_pairs: bool,
    /// Some pair (or, for order 1, the single element) generates.
    pub some_pair: bool,
}

pub fn two_generation_report(t: &CayleyTable) -> TwoGenerationReport {
    let n = t.order();
    let mut generates = vec![vec![false; n]; n];
    for x in 0..n {
        for y in x..n {
            let g = closure(t, &[x, y]).len() == n;
            generates[x][y] = g;
            generates[y][x] = g;
        }
    }
    let all_distinct_pairs = (0..n).all(|x| (0..n).all(|y| x == y || generates[x][y]));
    let some_pair = generates.iter().flatten().any(|&g| g);
    TwoGenerationReport {
        generates,
        all_distinct_pairs,
        some_pair,
    }
}

/// A greedily chosen generating set: starting from the element whose
/// closure with some partner is largest, keep adding the element that grows
/// the closure most.
pub fn greedy_generating_set(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut covered = 0;
    while covered < n {
        let mut best: Option<(usize, usize)> = None;
        for c in 0..n {
            if gens.contains(&c) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(c);
            let size = closure(t, &trial).len();
            if best.map_or(true, |(_, s)| size > s) {
                best = Some((c, size));
            }
        }
        let (c, size) = best.expect("an uncovered element remains");
        gens.push(c);
        covered = size;
    }
    gens
}

/// The ordered 4-cycles based on the center `(a·b)·a`.
///
/// Every element other than the center lies in exactly one cycle
/// `(x1, x2, x3, x4)` with `x1x2 = x2x3 = x3x4 = x4x1 = center`. Cycles are
/// listed by their least element, which is also their first entry.
pub fn four_cycles(t: &CayleyTable, a: usize, b: usize) -> Result<Vec<[usize; 4]>> {
    let n = t.order();
    if a >= n || b >= n {
        return Err(Error::InvalidArgument("base element out of range".into()));
    }
    if a == b {
        return Err(Error::InvalidArgument("4-cycles need two distinct base elements".into()));
    }
    if !is_quadratical(t).0 {
        return Err(Error::NotQuadratical);
    }
    four_cycles_around(t, t.mul(t.mul(a, b), a))
}

/// Same as [`four_cycles`] but with the center given directly. `t` must be
/// a quasigroup.
pub fn four_cycles_around(t: &CayleyTable, center: usize) -> Result<Vec<[usize; 4]>> {
    let n = t.order();
    if !t.is_latin_square() {
        return Err(Error::NotQuadratical);
    }
    let mut covered = vec![false; n];
    covered[center] = true;
    let mut cycles = Vec::new();
    for x1 in 0..n {
        if covered[x1] {
            continue;
        }
        let step = |x: usize| t.left_div(x, center).expect("quasigroup rows are permutations");
        let x2 = step(x1);
        let x3 = step(x2);
        let x4 = step(x3);
        let cycle = [x1, x2, x3, x4];
        let distinct = cycle.iter().collect::<BTreeSet<_>>().len() == 4;
        if !distinct || step(x4) != x1 || cycle.iter().any(|&c| covered[c]) {
            return Err(Error::Invariant(format!(
                "element {x1} does not lie on a 4-cycle based on {center}"
            )));
        }
        for c in cycle {
            covered[c] = true;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(m: usize, a: usize, b: usize) -> CayleyTable {
        CayleyTable::from_fn(m, |x, y| (a * x + b * y) % m).unwrap()
    }

    #[test]
    fn dual_is_an_involution() {
        let t = lin(5, 2, 4);
        assert_eq!(dual(&t), lin(5, 4, 2));
        assert_eq!(dual(&dual(&t)), t);
    }

    #[test]
    fn product_with_trivial_factor() {
        let t = lin(5, 2, 4);
        let one = CayleyTable::new(vec![vec![0]]).unwrap();
        assert_eq!(direct_product(&t, &one), t);
        assert_eq!(direct_product(&one, &t), t);
    }

    #[test]
    fn idempotent_singleton_is_closed() {
        let t = lin(13, 11, 3);
        for x in 0..13 {
            assert_eq!(generated_subgroupoid(&t, &[x]).unwrap(), BTreeSet::from([x]));
        }
        assert!(generated_subgroupoid(&t, &[]).is_err());
        assert!(generated_subgroupoid(&t, &[13]).is_err());
    }

    #[test]
    fn trivial_generation_report() {
        let one = CayleyTable::new(vec![vec![0]]).unwrap();
        let r = two_generation_report(&one);
        assert!(r.all_distinct_pairs && r.some_pair);
    }

    #[test]
    fn four_cycles_need_distinct_base() {
        let t = lin(5, 2, 4);
        assert!(four_cycles(&t, 1, 1).is_err());
        let z5 = lin(5, 1, 1);
        assert!(matches!(four_cycles(&z5, 0, 1), Err(Error::NotQuadratical)));
    }

    #[test]
    fn four_cycles_in_z13() {
        let t = lin(13, 11, 3);
        let cycles = four_cycles(&t, 0, 1).unwrap();
        assert_eq!(cycles.len(), 3);
        let center = t.mul(t.mul(0, 1), 0);
        for c in &cycles {
            assert_eq!(c[3], t.mul(c[0], c[2]));
            assert_eq!(c[0], *c.iter().min().unwrap());
            for i in 0..4 {
                assert_eq!(t.mul(c[i], c[(i + 1) % 4]), center);
            }
        }
    }
}
