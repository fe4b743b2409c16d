//! Shared inputs for the benchmarks in `benches/`.

use quadlat::fixtures::z3_square;
use quadlat::linear::{quadratical_over_zm, solve_quadratic_congruence};
use quadlat::CayleyTable;

/// The six quadratical products on `Z_3 × Z_3`.
pub fn order_nine() -> Vec<CayleyTable> {
    (1..=6).filter_map(z3_square).collect()
}

/// Every quadratical form `ax + (1-a)y` on `Z_m`.
pub fn linear_forms(m: u64) -> Vec<CayleyTable> {
    solve_quadratic_congruence(m)
        .into_iter()
        .map(|a| quadratical_over_zm(m, a).expect("a solves the congruence"))
        .collect()
}
