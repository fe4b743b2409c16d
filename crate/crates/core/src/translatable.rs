//! k-translatability of Cayley tables.
//!
//! Under a simultaneous row/column ordering `σ`, a table is `k`-translatable
//! when each row is the previous one rotated right by `k` places. Writing
//! `a_0, …, a_{n−1}` for the first row (0-based), the entry in row `i` and
//! column `j` is then `a_{(j − ik) mod n}`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{check_permutation, is_quadratical, CayleyTable};
use crate::linear::gcd;

/// Largest order for which [`find_translatable_ordering`] runs by default.
pub const DEFAULT_ORDER_SEARCH_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslatabilityReport {
    pub ordering: Vec<usize>,
    pub valid_ks: BTreeSet<usize>,
    /// Row `ordering[0]` read in column order `ordering`.
    pub first_row: Vec<usize>,
}

/// The table whose row `i` is `first_row` rotated right by `i·k`.
pub fn translate_table(first_row: &[usize], k: usize) -> Result<CayleyTable> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty first row".into()));
    }
    let shift = k % n;
    CayleyTable::from_fn(n, |i, j| first_row[(j + n * n - i * shift % n) % n])
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "shift k = {k} outside 1..{n}"
        )));
    }
    Ok(())
}

pub fn k_translatable_check(t: &CayleyTable, ordering: &[usize], k: usize) -> Result<bool> {
    let n = t.order();
    check_k(n, k)?;
    check_permutation(ordering, n)?;
    Ok(shift_law_holds(t, ordering, k))
}

fn shift_law_holds(t: &CayleyTable, ordering: &[usize], k: usize) -> bool {
    let n = ordering.len();
    (1..n).all(|q| {
        (0..n).all(|j| t.mul(ordering[q], ordering[j]) == t.mul(ordering[q - 1], ordering[(j + n - k) % n]))
    })
}

pub fn all_valid_k(t: &CayleyTable, ordering: &[usize]) -> Result<BTreeSet<usize>> {
    let n = t.order();
    check_permutation(ordering, n)?;
    Ok((1..n).filter(|&k| shift_law_holds(t, ordering, k)).collect())
}

pub fn translatability_report(t: &CayleyTable, ordering: &[usize]) -> Result<TranslatabilityReport> {
    let valid_ks = all_valid_k(t, ordering)?;
    Ok(TranslatabilityReport {
        ordering: ordering.to_vec(),
        valid_ks,
        first_row: ordering.iter().map(|&j| t.mul(ordering[0], j)).collect(),
    })
}

/// Searches all simultaneous orderings for one under which `t` is
/// translatable. Returns the lexicographically least ordering together with
/// its least valid `k`; `None` means no ordering works for any `k`.
///
/// Refuses tables of order above `cap`.
pub fn find_translatable_ordering(t: &CayleyTable, cap: usize) -> Result<Option<(Vec<usize>, usize)>> {
    let n = t.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    if n < 2 {
        return Ok(None);
    }
    let prefixes: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    Ok(prefixes.into_par_iter().find_map_first(|(a, b)| {
        let mut search = OrderingSearch::new(t);
        if search.push(a) && search.push(b) && search.descend() {
            search.found
        } else {
            None
        }
    }))
}

const UNSET: usize = usize::MAX;

/// Depth-first search over orderings with one requirement table per live
/// shift: `required[k][pos]` is the value the first row must carry at
/// `pos`, learned from entries already placed.
struct OrderingSearch<'a> {
    t: &'a CayleyTable,
    n: usize,
    order: Vec<usize>,
    used: Vec<bool>,
    alive: Vec<Vec<usize>>,
    required: Vec<Vec<usize>>,
    undo: Vec<Vec<(usize, usize)>>,
    found: Option<(Vec<usize>, usize)>,
}

impl<'a> OrderingSearch<'a> {
    fn new(t: &'a CayleyTable) -> Self {
        let n = t.order();
        OrderingSearch {
            t,
            n,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            alive: vec![(1..n).collect()],
            required: vec![vec![UNSET; n]; n],
            undo: Vec::new(),
            found: None,
        }
    }

    /// Places `e` next; returns false (leaving state unchanged) if no shift
    /// survives.
    fn push(&mut self, e: usize) -> bool {
        let p = self.order.len();
        self.order.push(e);
        self.used[e] = true;
        let mut log = Vec::new();
        let mut next = Vec::new();
        let parent = self.alive.last().expect("root level").clone();
        for k in parent {
            let mark = log.len();
            if self.admits(k, p, &mut log) {
                next.push(k);
            } else {
                for (kk, pos) in log.drain(mark..) {
                    self.required[kk][pos] = UNSET;
                }
            }
        }
        if next.is_empty() {
            for (k, pos) in log {
                self.required[k][pos] = UNSET;
            }
            self.order.pop();
            self.used[e] = false;
            return false;
        }
        self.alive.push(next);
        self.undo.push(log);
        true
    }

    fn pop(&mut self) {
        let e = self.order.pop().expect("non-empty ordering");
        self.used[e] = false;
        self.alive.pop();
        for (k, pos) in self.undo.pop().expect("undo level") {
            self.required[k][pos] = UNSET;
        }
    }

    /// Checks every entry involving the newest position `p` against the
    /// shift law for `k`.
    fn admits(&mut self, k: usize, p: usize, log: &mut Vec<(usize, usize)>) -> bool {
        let n = self.n;
        let t = self.t;
        let first = self.order[0];
        let e = self.order[p];
        if self.required[k][p] != UNSET && t.mul(first, e) != self.required[k][p] {
            return false;
        }
        for other in 0..=p {
            for (q, j) in [(p, other), (other, p)] {
                let v = t.mul(self.order[q], self.order[j]);
                let pos = (j + n * n - q * k % n) % n;
                if pos <= p {
                    if t.mul(first, self.order[pos]) != v {
                        return false;
                    }
                } else if self.required[k][pos] == UNSET {
                    self.required[k][pos] = v;
                    log.push((k, pos));
                } else if self.required[k][pos] != v {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self) -> bool {
        if self.order.len() == self.n {
            let k = self.alive.last().expect("level")[0];
            self.found = Some((self.order.clone(), k));
            return true;
        }
        for e in 0..self.n {
            if self.used[e] {
                continue;
            }
            if self.push(e) {
                if self.descend() {
                    return true;
                }
                self.pop();
            }
        }
        false
    }
}

/// The first row of the unique idempotent `k`-translatable quasigroup of
/// order `n`, as 0-based elements.
///
/// In 1-based terms element `i` sits at position `(i−1)(n−k) + i mod n`
/// (with residue 0 read as position `n`).
pub fn idempotent_first_row(n: usize, k: usize) -> Result<Vec<usize>> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "no idempotent translatable quasigroup has even order {n}"
        )));
    }
    if k < 2 || k >= n {
        return Err(Error::InvalidArgument(format!("shift k = {k} outside 2..{n}")));
    }
    if gcd(n as u64, k as u64) != 1 || gcd(n as u64, (k - 1) as u64) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need gcd(n, k) = gcd(n, k-1) = 1 for n = {n}, k = {k}"
        )));
    }
    let mut row = vec![UNSET; n];
    for i in 1..=n {
        let mut pos = ((i - 1) * (n - k) + i) % n;
        if pos == 0 {
            pos = n;
        }
        if row[pos - 1] != UNSET {
            return Err(Error::Invariant(format!("position {pos} claimed twice")));
        }
        row[pos - 1] = i - 1;
    }
    Ok(row)
}

pub fn build_idempotent_k_translatable(n: usize, k: usize) -> Result<CayleyTable> {
    translate_table(&idempotent_first_row(n, k)?, k)
}

/// Every `k` for which the idempotent `k`-translatable quasigroup of order
/// `n` exists and is quadratical.
pub fn feasible_k_idempotent_quadratical(n: usize) -> BTreeSet<usize> {
    (2..n)
        .filter_map(|k| build_idempotent_k_translatable(n, k).ok().map(|t| (k, t)))
        .filter(|(_, t)| is_quadratical(t).0)
        .map(|(k, _)| k)
        .collect()
}

/// Builds the `k`-translatable table from `first_row` and reports whether
/// its first row is a permutation (a cancellable element) and whether the
/// table is a quasigroup.
pub fn gcd_quasigroup_property_test(first_row: &[usize], k: usize) -> Result<(bool, bool)> {
    let n = first_row.len();
    check_k(n, k)?;
    if first_row.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument("first row entry out of range".into()));
    }
    let mut seen = vec![false; n];
    let cancellable = first_row.iter().all(|&v| !std::mem::replace(&mut seen[v], true));
    let t = translate_table(first_row, k)?;
    Ok((cancellable, t.is_latin_square()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{linear_table, LinearSpec};

    fn one_based(row: &[usize]) -> Vec<usize> {
        row.iter().map(|v| v + 1).collect()
    }

    #[test]
    fn first_rows_of_order_seven() {
        assert_eq!(one_based(&idempotent_first_row(7, 3).unwrap()), [1, 4, 7, 3, 6, 2, 5]);
        assert_eq!(one_based(&idempotent_first_row(7, 4).unwrap()), [1, 3, 5, 7, 2, 4, 6]);
        assert_eq!(one_based(&idempotent_first_row(5, 2).unwrap()), [1, 5, 4, 3, 2]);
    }

    #[test]
    fn first_row_preconditions() {
        assert!(idempotent_first_row(8, 3).is_err());
        assert!(idempotent_first_row(9, 3).is_err());
        assert!(idempotent_first_row(9, 4).is_err());
        assert!(idempotent_first_row(7, 1).is_err());
    }

    #[test]
    fn built_table_matches_linear_form() {
        let t = build_idempotent_k_translatable(5, 2).unwrap();
        assert_eq!(t, linear_table(&LinearSpec::new(5, 2, 4, 0).unwrap()));
        let t7 = build_idempotent_k_translatable(7, 3).unwrap();
        assert!(t7.is_latin_square());
        assert!((0..7).all(|x| t7.mul(x, x) == x));
        assert!(!is_quadratical(&t7).0);
    }

    #[test]
    fn k_range_is_checked() {
        let t = CayleyTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        let id: Vec<usize> = (0..5).collect();
        assert!(k_translatable_check(&t, &id, 0).is_err());
        assert!(k_translatable_check(&t, &id, 5).is_err());
        assert!(k_translatable_check(&t, &[0, 1, 2, 3, 3], 4).is_err());
        assert!(k_translatable_check(&t, &id, 4).unwrap());
    }

    #[test]
    fn valid_k_examples() {
        let id5: Vec<usize> = (0..5).collect();
        let t = linear_table(&LinearSpec::new(5, 2, 4, 0).unwrap());
        assert_eq!(all_valid_k(&t, &id5).unwrap(), BTreeSet::from([2]));
        let z5 = CayleyTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert_eq!(all_valid_k(&z5, &id5).unwrap(), BTreeSet::from([4]));
        let one = CayleyTable::new(vec![vec![0]]).unwrap();
        assert!(all_valid_k(&one, &[0]).unwrap().is_empty());
    }

    #[test]
    fn report_first_row_follows_ordering() {
        let t = linear_table(&LinearSpec::new(5, 2, 4, 0).unwrap());
        let ordering = [2, 0, 1, 4, 3];
        let r = translatability_report(&t, &ordering).unwrap();
        assert_eq!(r.first_row, ordering.iter().map(|&j| t.mul(2, j)).collect::<Vec<_>>());
    }

    #[test]
    fn ordering_search_finds_verified_witness() {
        let t = linear_table(&LinearSpec::new(7, 4, 1, 0).unwrap());
        let shuffled = t.relabel(&[3, 6, 0, 2, 5, 1, 4]).unwrap();
        let (ordering, k) = find_translatable_ordering(&shuffled, 10).unwrap().unwrap();
        assert!(k_translatable_check(&shuffled, &ordering, k).unwrap());
        assert!(matches!(
            find_translatable_ordering(&linear_table(&LinearSpec::new(11, 1, 1, 0).unwrap()), 10),
            Err(Error::CapExceeded { order: 11, cap: 10 })
        ));
    }

    #[test]
    fn gcd_property_examples() {
        assert_eq!(gcd_quasigroup_property_test(&[0, 1, 2, 3, 4, 5], 2).unwrap(), (true, false));
        assert_eq!(gcd_quasigroup_property_test(&[0, 4, 3, 2, 1], 2).unwrap(), (true, true));
        let row9: Vec<usize> = (0..9).rev().collect();
        assert_eq!(gcd_quasigroup_property_test(&row9, 3).unwrap(), (true, false));
    }

    #[test]
    fn feasible_shifts_small_orders() {
        assert_eq!(feasible_k_idempotent_quadratical(5), BTreeSet::from([2, 3]));
        assert!(feasible_k_idempotent_quadratical(9).is_empty());
        assert!(feasible_k_idempotent_quadratical(21).is_empty());
    }
}
