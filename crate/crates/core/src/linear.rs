//! Linear groupoids `x∗y = ax + by + c` over `Z_m`.
//!
//! A quadratical quasigroup induced by `Z_m` has the form `ax + (1−a)y`
//! with `2a² − 2a + 1 ≡ 0 (mod m)`. Such a table is `k`-translatable under
//! the natural ordering exactly when `a + kb ≡ 0 (mod m)`, which for the
//! quadratical case reads `(a−1)k ≡ a (mod m)` and has a unique solution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::CayleyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearSpec {
    m: u64,
    a: u64,
    b: u64,
    c: u64,
}

impl LinearSpec {
    /// Coefficients are reduced mod `m`.
    pub fn new(m: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        let r = |v: i64| v.rem_euclid(m as i64) as u64;
        Ok(LinearSpec {
            m,
            a: r(a),
            b: r(b),
            c: r(c),
        })
    }

    /// The quadratical candidate `ax + (1−a)y`.
    pub fn quadratical(m: u64, a: u64) -> Result<Self> {
        Self::new(m, a as i64, 1 - (a % m.max(1)) as i64, 0)
    }

    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn c(&self) -> u64 {
        self.c
    }

    /// `c = 0`, `b ≡ 1 − a` and `2a² − 2a + 1 ≡ 0 (mod m)`.
    pub fn is_quadratical_form(&self) -> bool {
        self.c == 0 && (self.a + self.b) % self.m == 1 % self.m && solves_congruence(self.m, self.a)
    }

    pub fn apply(&self, x: u64, y: u64) -> u64 {
        let m = self.m as u128;
        ((self.a as u128 * x as u128 + self.b as u128 * y as u128 + self.c as u128) % m) as u64
    }

    /// The form of the dual groupoid, `bx + ay + c`.
    pub fn dual(&self) -> LinearSpec {
        LinearSpec {
            a: self.b,
            b: self.a,
            ..*self
        }
    }
}

fn solves_congruence(m: u64, a: u64) -> bool {
    let m = m as u128;
    let a = a as u128 % m;
    (2 * a * a + 1 + 2 * (m - a)) % m == 0
}

/// All `a ∈ Z_m` with `2a² − 2a + 1 ≡ 0 (mod m)`, ascending, by direct scan.
pub fn solve_quadratic_congruence(m: u64) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    (0..m).filter(|&a| solves_congruence(m, a)).collect()
}

pub fn linear_table(spec: &LinearSpec) -> CayleyTable {
    let m = spec.m as usize;
    CayleyTable::from_fn(m, |x, y| spec.apply(x as u64, y as u64) as usize)
        .expect("linear table entries are reduced mod m")
}

/// The quadratical quasigroup `ax + (1−a)y` on `Z_m`.
pub fn quadratical_over_zm(m: u64, a: u64) -> Result<CayleyTable> {
    if m == 0 || a >= m || !solves_congruence(m, a) {
        return Err(Error::InvalidArgument(format!(
            "a = {a} does not solve 2a^2 - 2a + 1 = 0 (mod {m})"
        )));
    }
    Ok(linear_table(&LinearSpec::quadratical(m, a)?))
}

/// Every `k ∈ 1..m` with `a + kb ≡ 0 (mod m)`, ascending; empty when the
/// table is not translatable under the natural ordering.
pub fn translatability_k_linear(spec: &LinearSpec) -> Vec<u64> {
    let m = spec.m;
    let (a, b) = (spec.a, spec.b);
    let g = gcd(b, m);
    // a + kb ≡ 0 needs gcd(b, m) | a; then k ≡ −a/g · (b/g)⁻¹ (mod m/g)
    if (m - a) % m % g != 0 {
        return Vec::new();
    }
    let step = m / g;
    let target = ((m - a) % m) / g;
    let base = if step == 1 {
        0
    } else {
        let inv = mod_inverse((b / g) % step, step).expect("b/g is a unit mod m/g");
        (target as u128 * inv as u128 % step as u128) as u64
    };
    (0..g)
        .map(|i| base + i * step)
        .filter(|&k| k >= 1 && k < m)
        .collect()
}

/// The unique `k` with `(a−1)k ≡ a (mod m)` for a quadratical `a`.
pub fn translatability_k_quadratical(m: u64, a: u64) -> Result<u64> {
    if m < 2 || a >= m || !solves_congruence(m, a) {
        return Err(Error::InvalidArgument(format!(
            "a = {a} is not a quadratical coefficient mod {m}"
        )));
    }
    let inv = mod_inverse((a + m - 1) % m, m).ok_or_else(|| {
        Error::Invariant(format!("a - 1 = {} is not a unit mod {m}", (a + m - 1) % m))
    })?;
    let k = (a as u128 * inv as u128 % m as u128) as u64;
    if k == 0 {
        return Err(Error::Invariant(format!("k = 0 for m = {m}, a = {a}")));
    }
    Ok(k)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}
