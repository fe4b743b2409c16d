//! Reference tables and transcribed classification rows.
//!
//! Qn tables use canonical labels (`aba` first, then `11 12 13 14 21 …`).
//! The tables of duals are written in the labels of their own H-chain.

use std::path::Path;

use crate::enumerate::{read_csv, ClassificationRow};
use crate::groupoid::CayleyTable;

const Q1: &str = include_str!("../fixtures/q1.txt");
const Q1_DUAL: &str = include_str!("../fixtures/q1_dual.txt");
const Q2: &str = include_str!("../fixtures/q2.txt");
const Q3: &str = include_str!("../fixtures/q3.txt");
const Q3_DUAL: &str = include_str!("../fixtures/q3_dual.txt");
const Q4: &str = include_str!("../fixtures/q4.txt");
const Q4_DUAL: &str = include_str!("../fixtures/q4_dual.txt");
const TRANSLATABLE5: [&str; 3] = [
    include_str!("../fixtures/translatable5_1.txt"),
    include_str!("../fixtures/translatable5_2.txt"),
    include_str!("../fixtures/translatable5_3.txt"),
];
const K_TABLE: &str = include_str!("../fixtures/k_table.csv");
const CLASSIFICATION: &str = include_str!("../fixtures/classification.csv");

fn parse(text: &str) -> CayleyTable {
    text.parse().expect("bundled fixture parses")
}

/// The table of form Qn for `n ∈ 1..=4`.
pub fn qn(n: usize) -> Option<CayleyTable> {
    [Q1, Q2, Q3, Q4].get(n.checked_sub(1)?).map(|t| parse(t))
}

/// The dual of the Qn table in its own chain labels, for `n ∈ {1, 3, 4}`.
pub fn qn_dual(n: usize) -> Option<CayleyTable> {
    match n {
        1 => Some(parse(Q1_DUAL)),
        3 => Some(parse(Q3_DUAL)),
        4 => Some(parse(Q4_DUAL)),
        _ => None,
    }
}

/// A correction applied while transcribing a reference table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub table: &'static str,
    pub row: &'static str,
    pub column: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
}

/// The printed value repeats `23` within its row; `24` is the only value
/// that keeps the table a quasigroup.
pub const TABLE_ERRATA: [Erratum; 1] = [Erratum {
    table: "q3_dual",
    row: "23",
    column: "31",
    printed: "23",
    corrected: "24",
}];

/// The dual of Q3 exactly as printed, erratum included.
pub fn q3_dual_as_printed() -> CayleyTable {
    let t = parse(Q3_DUAL);
    let e = TABLE_ERRATA[0];
    let (row, col, printed) = (
        t.element(e.row).expect("label"),
        t.element(e.column).expect("label"),
        t.element(e.printed).expect("label"),
    );
    let mut rows = t.rows();
    rows[row][col] = printed;
    CayleyTable::new(rows)
        .and_then(|r| r.with_labels(t.labels().expect("labels").to_vec()))
        .expect("well-formed")
}

/// Q1 listed in the order `a, b, ab, ba, aba`, as canonical indices.
pub const Q1_PRIME_ORDER: [usize; 5] = [1, 4, 2, 3, 0];

/// Q1 listed as `a, ab, ba, b, aba`.
pub const Q1_ORDER: [usize; 5] = [1, 2, 3, 4, 0];

/// Three 4-translatable quasigroups of order 5 under the natural ordering.
pub fn translatable_order5() -> [CayleyTable; 3] {
    TRANSLATABLE5.map(parse)
}

/// One of six quadratical products on `Z_3 × Z_3`; the pair `(x, y)` has
/// index `3x + y`. `i ∈ 1..=6`.
pub fn z3_square(i: usize) -> Option<CayleyTable> {
    const COEFFS: [[[usize; 4]; 2]; 6] = [
        [[0, 1, 1, 2], [1, 1, 2, 0]],
        [[0, 2, 1, 1], [2, 1, 1, 0]],
        [[1, 1, 0, 2], [1, 0, 2, 1]],
        [[1, 2, 0, 1], [2, 0, 1, 1]],
        [[2, 1, 2, 2], [2, 2, 1, 2]],
        [[2, 2, 2, 1], [1, 2, 2, 2]],
    ];
    let c = COEFFS.get(i.checked_sub(1)?)?;
    let t = CayleyTable::from_fn(9, |p, q| {
        let v = [p / 3, p % 3, q / 3, q % 3];
        let f = |row: &[usize; 4]| row.iter().zip(v).map(|(a, b)| a * b).sum::<usize>() % 3;
        3 * f(&c[0]) + f(&c[1])
    })
    .expect("entries reduced mod 3");
    let labels = (0..9).map(|p| format!("({},{})", p / 3, p % 3));
    Some(t.with_labels(labels).expect("distinct labels"))
}

/// Rows `(k, m, a, b)` of the transcribed list of k-translatable forms,
/// as printed.
pub fn transcribed_k_table() -> Vec<ClassificationRow> {
    read_csv(K_TABLE, Path::new("fixtures/k_table.csv")).expect("bundled csv")
}

/// Rows `(m, a, b, k)` of the transcribed classification, as printed.
pub fn transcribed_classification() -> Vec<ClassificationRow> {
    read_csv(CLASSIFICATION, Path::new("fixtures/classification.csv")).expect("bundled csv")
}
