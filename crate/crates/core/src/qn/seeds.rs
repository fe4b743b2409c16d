use serde::Serialize;

use super::chain::block_index;
use super::engine::{Cell, SeedKind};
use crate::error::{Error, Result};

/// A cell value that holds in every quadratical quasigroup of form Qn with
/// the given `aba·a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Seed {
    pub cell: Cell,
    pub value: usize,
    pub kind: SeedKind,
}

const ABA: usize = 0;

/// Per choice of `aba·a = n<c>`: block-n coordinates of `aba·a, aba·ab,
/// aba·ba, aba·b, a·aba, ab·aba, ba·aba, b·aba`.
const CENTER_ROW: [[usize; 8]; 4] = [
    [1, 2, 3, 4, 2, 4, 1, 3],
    [2, 4, 1, 3, 4, 3, 2, 1],
    [3, 1, 4, 2, 1, 2, 3, 4],
    [4, 3, 2, 1, 3, 1, 4, 2],
];

/// Block-1 coordinates of `n1·n2, n2·n4, n3·n1, n4·n3`.
const WRAP: [[usize; 4]; 4] = [[1, 2, 3, 4], [3, 1, 4, 2], [2, 4, 1, 3], [4, 3, 2, 1]];

/// Block-n coordinates of `11·34, 23·14, 34·14, 14·21`.
const CROSS: [[usize; 4]; 4] = [[3, 2, 1, 1], [1, 4, 2, 2], [4, 1, 3, 3], [2, 3, 4, 4]];

/// `r` with `(n−1)r = 11·n<c> = n<r>·11`.
const RETURN: [usize; 4] = [2, 4, 1, 3];

/// All seed values for `4n+1` elements and `aba·a = n<choice>`, in a fixed
/// order. Cells may repeat with equal values.
pub fn qn_seeds(n: usize, choice: usize) -> Result<Vec<Seed>> {
    if n == 0 || !(1..=4).contains(&choice) {
        return Err(Error::InvalidArgument(format!("no seeds for n = {n}, choice = {choice}")));
    }
    let e = block_index;
    let order = 4 * n + 1;
    let mut seeds = Vec::new();
    let mut put = |x: usize, y: usize, value: usize, kind: SeedKind| {
        seeds.push(Seed {
            cell: (x, y),
            value,
            kind,
        })
    };
    for x in 0..order {
        put(x, x, x, SeedKind::Idempotency);
    }
    put(e(1, 1), e(1, 4), e(1, 2), SeedKind::BasePair);
    put(e(1, 4), e(1, 1), e(1, 3), SeedKind::BasePair);
    for t in 2..=n {
        let p = t - 1;
        put(e(p, 1), e(p, 2), e(t, 1), SeedKind::Recurrence);
        put(e(p, 2), e(p, 4), e(t, 2), SeedKind::Recurrence);
        put(e(p, 3), e(p, 1), e(t, 3), SeedKind::Recurrence);
        put(e(p, 4), e(p, 3), e(t, 4), SeedKind::Recurrence);
    }
    for t in 1..=n {
        put(e(t, 1), e(t, 4), e(t, 2), SeedKind::CycleLaw);
        put(e(t, 2), e(t, 3), e(t, 4), SeedKind::CycleLaw);
        put(e(t, 3), e(t, 2), e(t, 1), SeedKind::CycleLaw);
        put(e(t, 4), e(t, 1), e(t, 3), SeedKind::CycleLaw);
    }
    for t in 1..=n {
        for (x, y) in [(1, 3), (2, 1), (3, 4), (4, 2)] {
            put(e(t, x), e(t, y), ABA, SeedKind::CenterProducts);
        }
    }
    for t in 2..=n {
        for k in 1..=4 {
            put(ABA, e(t, k), e(t - 1, k), SeedKind::CenterLeft);
        }
        for (k, r) in [(1, 2), (2, 4), (3, 1), (4, 3)] {
            put(e(t, k), ABA, e(t - 1, r), SeedKind::CenterRight);
        }
    }
    let c = choice - 1;
    let row = CENTER_ROW[c];
    for k in 1..=4 {
        put(ABA, e(1, k), e(n, row[k - 1]), SeedKind::ChoiceRow);
    }
    for k in 1..=4 {
        put(e(1, k), ABA, e(n, row[3 + k]), SeedKind::ChoiceRow);
    }
    for (i, (x, y)) in [(1, 2), (2, 4), (3, 1), (4, 3)].into_iter().enumerate() {
        put(e(n, x), e(n, y), e(1, WRAP[c][i]), SeedKind::ChoiceRow);
    }
    if n >= 2 {
        let cross = CROSS[c];
        let cells = [((1, 1), (3, 4)), ((2, 3), (1, 4)), ((3, 4), (1, 4)), ((1, 4), (2, 1))];
        for (i, ((t1, k1), (t2, k2))) in cells.into_iter().enumerate() {
            if t1.max(t2) <= n {
                put(e(t1, k1), e(t2, k2), e(n, cross[i]), SeedKind::ChoiceCross);
            }
        }
        let r = RETURN[c];
        put(e(1, 1), e(n, choice), e(n - 1, r), SeedKind::ChoiceCross);
        put(e(n, r), e(1, 1), e(n - 1, r), SeedKind::ChoiceCross);
    }
    Ok(seeds)
}
