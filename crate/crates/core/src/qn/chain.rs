use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{is_quadratical, CayleyTable};

/// The first property found to fail while building an H-chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChainDefect {
    SameBase,
    TooDeep { depth: usize, order: usize },
    RepeatedInBlock { block: usize },
    CenterInBlock { block: usize },
    CycleLaw { block: usize },
    CenterProducts { block: usize },
    CenterShift { block: usize },
    Overlap { first: usize, second: usize },
}

impl fmt::Display for ChainDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDefect::SameBase => write!(f, "base elements a and b coincide"),
            ChainDefect::TooDeep { depth, order } => {
                write!(f, "{depth} blocks need at least {} elements, the table has {order}", 4 * depth + 1)
            }
            ChainDefect::RepeatedInBlock { block } => {
                write!(f, "block H{block} does not consist of four distinct elements")
            }
            ChainDefect::CenterInBlock { block } => write!(f, "block H{block} contains the center aba"),
            ChainDefect::CycleLaw { block } => write!(
                f,
                "block H{block} violates t1·t4 = t2, t2·t3 = t4, t3·t2 = t1, t4·t1 = t3"
            ),
            ChainDefect::CenterProducts { block } => {
                write!(f, "block H{block} violates t1·t3 = t2·t1 = t3·t4 = t4·t2 = aba")
            }
            ChainDefect::CenterShift { block } => {
                write!(f, "block H{block} violates aba·tk = (t-1)k")
            }
            ChainDefect::Overlap { first, second } => write!(f, "blocks H{first} and H{second} intersect"),
        }
    }
}

/// Base pair, center `aba` and blocks `H1..Hn` of an H-chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QnDecomposition {
    pub n: usize,
    pub base: (usize, usize),
    pub center: usize,
    pub blocks: Vec<[usize; 4]>,
    pub order: usize,
}

impl QnDecomposition {
    /// Whether `{aba} ∪ H1 ∪ … ∪ Hn` is the whole carrier.
    pub fn covers(&self) -> bool {
        self.order == 4 * self.n + 1
    }

    /// Elements in canonical order: the center, then each block in turn.
    pub fn canonical_elements(&self) -> Vec<usize> {
        std::iter::once(self.center).chain(self.blocks.iter().flatten().copied()).collect()
    }

    /// `phi[x]` is the canonical index of element `x`; feed it to
    /// [`CayleyTable::relabel`] to move a table into canonical form.
    pub fn canonical_relabeling(&self) -> Result<Vec<usize>> {
        if !self.covers() {
            return Err(Error::InvalidArgument(format!(
                "{} blocks do not cover a table of order {}",
                self.n, self.order
            )));
        }
        let mut phi = vec![0; self.order];
        for (i, x) in self.canonical_elements().into_iter().enumerate() {
            phi[x] = i;
        }
        Ok(phi)
    }

    /// `t` relabelled so that the center is 0 and block element `tk` is
    /// `4(t−1)+k`, carrying canonical labels.
    pub fn canonical_table(&self, t: &CayleyTable) -> Result<CayleyTable> {
        t.relabel(&self.canonical_relabeling()?)?
            .with_labels(canonical_labels(self.n, false))
    }
}

/// Canonical index of block element `tk` (`t ≥ 1`, `k ∈ 1..=4`).
pub fn block_index(t: usize, k: usize) -> usize {
    4 * (t - 1) + k
}

/// `aba` followed by `11 12 13 14 21 …`; with `named_base` the first block
/// is written `a ab ba b`.
pub fn canonical_labels(n: usize, named_base: bool) -> Vec<String> {
    let mut labels = vec!["aba".to_owned()];
    for t in 1..=n {
        for k in 1..=4 {
            labels.push(if named_base && t == 1 {
                ["a", "ab", "ba", "b"][k - 1].to_owned()
            } else if t < 10 {
                format!("{t}{k}")
            } else {
                format!("{t}_{k}")
            });
        }
    }
    labels
}

/// Builds `H1..Hn` from the base pair and checks the block properties
/// every quadratical quasigroup satisfies.
pub fn h_chain(t: &CayleyTable, a: usize, b: usize, n: usize) -> Result<QnDecomposition> {
    let order = t.order();
    if a >= order || b >= order {
        return Err(Error::InvalidArgument(format!("base element out of range for order {order}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("an H-chain needs at least one block".into()));
    }
    if a == b {
        return Err(Error::Chain(ChainDefect::SameBase));
    }
    if 4 * n + 1 > order {
        return Err(Error::Chain(ChainDefect::TooDeep { depth: n, order }));
    }
    let m = |x, y| t.mul(x, y);
    let center = m(m(a, b), a);
    let mut blocks: Vec<[usize; 4]> = vec![[a, m(a, b), m(b, a), b]];
    for _ in 1..n {
        let [p1, p2, p3, p4] = *blocks.last().expect("non-empty");
        blocks.push([m(p1, p2), m(p2, p4), m(p3, p1), m(p4, p3)]);
    }
    for (i, blk) in blocks.iter().enumerate() {
        let block = i + 1;
        let [t1, t2, t3, t4] = *blk;
        let distinct = (0..4).all(|p| (p + 1..4).all(|q| blk[p] != blk[q]));
        if !distinct {
            return Err(Error::Chain(ChainDefect::RepeatedInBlock { block }));
        }
        if blk.contains(&center) {
            return Err(Error::Chain(ChainDefect::CenterInBlock { block }));
        }
        if m(t1, t4) != t2 || m(t2, t3) != t4 || m(t3, t2) != t1 || m(t4, t1) != t3 {
            return Err(Error::Chain(ChainDefect::CycleLaw { block }));
        }
        if [m(t1, t3), m(t2, t1), m(t3, t4), m(t4, t2)].iter().any(|&v| v != center) {
            return Err(Error::Chain(ChainDefect::CenterProducts { block }));
        }
        if i > 0 && (0..4).any(|k| m(center, blk[k]) != blocks[i - 1][k]) {
            return Err(Error::Chain(ChainDefect::CenterShift { block }));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if blocks[i].iter().any(|x| blocks[j].contains(x)) {
                return Err(Error::Chain(ChainDefect::Overlap { first: i + 1, second: j + 1 }));
            }
        }
    }
    Ok(QnDecomposition {
        n,
        base: (a, b),
        center,
        blocks,
        order,
    })
}

/// The first ordered pair `(a, b)`, `a ≠ b`, whose H-chain partitions the
/// carrier, as `(n, a, b)`.
pub fn detect_form(t: &CayleyTable) -> Result<Option<(usize, usize, usize)>> {
    if !is_quadratical(t).0 {
        return Err(Error::NotQuadratical);
    }
    let order = t.order();
    if order % 4 != 1 || order < 5 {
        return Ok(None);
    }
    let n = (order - 1) / 4;
    for a in 0..order {
        for b in 0..order {
            if a != b && h_chain(t, a, b, n).is_ok_and(|d| d.covers()) {
                return Ok(Some((n, a, b)));
            }
        }
    }
    Ok(None)
}

/// Position of block coordinate `k` of block `t` in the dual chain.
pub fn dual_coordinate(t: usize, k: usize) -> usize {
    const PATTERN: [[usize; 4]; 4] = [[2, 1, 4, 3], [1, 3, 2, 4], [3, 4, 1, 2], [4, 2, 3, 1]];
    PATTERN[t % 4][k - 1]
}

/// The involution on canonical indices relating a table of form Qn to the
/// chain of its dual: the dual chain's element with canonical index `i` is
/// the original element `map[i]`. Hence `dual(t).relabel(&map)` is the dual
/// written in its own canonical labels.
pub fn dual_element_map(n: usize) -> Vec<usize> {
    let mut map = vec![0; 4 * n + 1];
    for t in 1..=n {
        for k in 1..=4 {
            map[block_index(t, k)] = block_index(t, dual_coordinate(t, k));
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::quadratical_over_zm;

    #[test]
    fn dual_map_first_rows() {
        let map = dual_element_map(3);
        let idx = |t, k| block_index(t, k);
        assert_eq!(map[idx(1, 2)], idx(1, 3));
        assert_eq!(map[idx(1, 3)], idx(1, 2));
        assert_eq!(map[idx(1, 1)], idx(1, 1));
        assert_eq!(map[idx(1, 4)], idx(1, 4));
        assert_eq!(map[idx(3, 1)], idx(3, 4));
        assert_eq!(map[idx(3, 2)], idx(3, 2));
        assert_eq!(map[0], 0);
    }

    #[test]
    fn dual_map_is_an_involution() {
        for n in 1..12 {
            let map = dual_element_map(n);
            assert!((0..map.len()).all(|i| map[map[i]] == i));
        }
    }

    #[test]
    fn chain_of_z13_covers() {
        let t = quadratical_over_zm(13, 11).unwrap();
        let d = h_chain(&t, 0, 1, 3).unwrap();
        assert!(d.covers());
        let mut all = d.canonical_elements();
        all.sort();
        assert_eq!(all, (0..13).collect::<Vec<_>>());
        assert_eq!(d.blocks[0], [0, t.mul(0, 1), t.mul(1, 0), 1]);
    }

    #[test]
    fn chain_defects() {
        let t = quadratical_over_zm(13, 11).unwrap();
        assert!(matches!(h_chain(&t, 2, 2, 1), Err(Error::Chain(ChainDefect::SameBase))));
        assert!(matches!(
            h_chain(&t, 0, 1, 4),
            Err(Error::Chain(ChainDefect::TooDeep { depth: 4, order: 13 }))
        ));
        let z5 = CayleyTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert!(matches!(h_chain(&z5, 0, 1, 1), Err(Error::Chain(_))));
    }

    #[test]
    fn detect_form_on_linear_tables() {
        assert_eq!(detect_form(&quadratical_over_zm(5, 2).unwrap()).unwrap(), Some((1, 0, 1)));
        assert_eq!(detect_form(&quadratical_over_zm(13, 11).unwrap()).unwrap(), Some((3, 0, 1)));
        assert_eq!(detect_form(&quadratical_over_zm(25, 22).unwrap()).unwrap(), None);
        let z5 = CayleyTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert!(matches!(detect_form(&z5), Err(Error::NotQuadratical)));
    }

    #[test]
    fn labels() {
        assert_eq!(canonical_labels(1, false), ["aba", "11", "12", "13", "14"]);
        assert_eq!(canonical_labels(2, true)[1..6], ["a", "ab", "ba", "b", "21"]);
    }
}
