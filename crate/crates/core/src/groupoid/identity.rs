//! Exhaustive checking of the fixed identity system of quadratical
//! quasigroups against a Cayley table.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::CayleyTable;
use crate::error::{Error, Result};

/// The identities (and structural laws) the checker knows about.
///
/// Variables are always named `x, y, z, w` in that order; counterexamples are
/// reported as a tuple in that variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    /// `xy·x = zx·yz`
    A,
    /// `x = xx`
    Idempotency,
    /// `x·yx = xy·x`
    Elasticity,
    /// `x·yx = xy·x = yx·y`
    StrongElasticity,
    /// `yx·xy = x`
    Bookend,
    /// `x·yz = xy·xz`
    LeftDistributivity,
    /// `xy·z = xz·yz`
    RightDistributivity,
    /// `xy·zw = xz·yw`
    Mediality,
    /// `x(y·yx) = (xy·x)y`
    Eq8,
    /// `(xy·y)x = y(x·yx)`
    Eq9,
    /// `xy = zw ⟺ yz = wx`
    Alterability,
    /// `xy = xz ⟹ y = z`
    LeftCancellation,
    /// `yx = zx ⟹ y = z`
    RightCancellation,
    /// for all `x, y` some `z` has `x·z = y`
    RightSolvability,
    /// `y ≠ z ⟹ xy ≠ xz and yx ≠ zx`
    LatinSquare,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::A,
        IdentityId::Idempotency,
        IdentityId::Elasticity,
        IdentityId::StrongElasticity,
        IdentityId::Bookend,
        IdentityId::LeftDistributivity,
        IdentityId::RightDistributivity,
        IdentityId::Mediality,
        IdentityId::Eq8,
        IdentityId::Eq9,
        IdentityId::Alterability,
        IdentityId::LeftCancellation,
        IdentityId::RightCancellation,
        IdentityId::RightSolvability,
        IdentityId::LatinSquare,
    ];

    /// The ten identities every quadratical groupoid satisfies, plus law (A).
    pub const QUADRATICAL_LAWS: [IdentityId; 11] = [
        IdentityId::A,
        IdentityId::Idempotency,
        IdentityId::Elasticity,
        IdentityId::StrongElasticity,
        IdentityId::Bookend,
        IdentityId::LeftDistributivity,
        IdentityId::RightDistributivity,
        IdentityId::Mediality,
        IdentityId::Eq8,
        IdentityId::Eq9,
        IdentityId::Alterability,
    ];

    pub fn arity(self) -> usize {
        use IdentityId::*;
        match self {
            Idempotency => 1,
            Elasticity | StrongElasticity | Bookend | Eq8 | Eq9 | RightSolvability => 2,
            A | LeftDistributivity | RightDistributivity | LeftCancellation
            | RightCancellation | LatinSquare => 3,
            Mediality | Alterability => 4,
        }
    }

    pub fn name(self) -> &'static str {
        use IdentityId::*;
        match self {
            A => "A",
            Idempotency => "idempotency",
            Elasticity => "elasticity",
            StrongElasticity => "strong-elasticity",
            Bookend => "bookend",
            LeftDistributivity => "left-distributivity",
            RightDistributivity => "right-distributivity",
            Mediality => "mediality",
            Eq8 => "eq8",
            Eq9 => "eq9",
            Alterability => "alterability",
            LeftCancellation => "left-cancellation",
            RightCancellation => "right-cancellation",
            RightSolvability => "right-solvability",
            LatinSquare => "latin-square",
        }
    }

    pub fn equation(self) -> &'static str {
        use IdentityId::*;
        match self {
            A => "xy·x = zx·yz",
            Idempotency => "x = xx",
            Elasticity => "x·yx = xy·x",
            StrongElasticity => "x·yx = xy·x = yx·y",
            Bookend => "yx·xy = x",
            LeftDistributivity => "x·yz = xy·xz",
            RightDistributivity => "xy·z = xz·yz",
            Mediality => "xy·zw = xz·yw",
            Eq8 => "x(y·yx) = (xy·x)y",
            Eq9 => "(xy·y)x = y(x·yx)",
            Alterability => "xy = zw <=> yz = wx",
            LeftCancellation => "xy = xz => y = z",
            RightCancellation => "yx = zx => y = z",
            RightSolvability => "exists z: xz = y",
            LatinSquare => "y != z => xy != xz and yx != zx",
        }
    }

    /// Whether the variable assignment `v` violates this identity in `t`.
    ///
    /// `v` must hold at least [`arity`](Self::arity) elements.
    pub fn violated_by(self, t: &CayleyTable, v: &[usize]) -> bool {
        use IdentityId::*;
        let m = |a, b| t.mul(a, b);
        match self {
            A => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(m(x, y), x) != m(m(z, x), m(y, z))
            }
            Idempotency => m(v[0], v[0]) != v[0],
            Elasticity => {
                let (x, y) = (v[0], v[1]);
                m(x, m(y, x)) != m(m(x, y), x)
            }
            StrongElasticity => {
                let (x, y) = (v[0], v[1]);
                let l = m(x, m(y, x));
                l != m(m(x, y), x) || l != m(m(y, x), y)
            }
            Bookend => {
                let (x, y) = (v[0], v[1]);
                m(m(y, x), m(x, y)) != x
            }
            LeftDistributivity => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(x, m(y, z)) != m(m(x, y), m(x, z))
            }
            RightDistributivity => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(m(x, y), z) != m(m(x, z), m(y, z))
            }
            Mediality => {
                let (x, y, z, w) = (v[0], v[1], v[2], v[3]);
                m(m(x, y), m(z, w)) != m(m(x, z), m(y, w))
            }
            Eq8 => {
                let (x, y) = (v[0], v[1]);
                m(x, m(y, m(y, x))) != m(m(m(x, y), x), y)
            }
            Eq9 => {
                let (x, y) = (v[0], v[1]);
                m(m(m(x, y), y), x) != m(y, m(x, m(y, x)))
            }
            Alterability => {
                let (x, y, z, w) = (v[0], v[1], v[2], v[3]);
                (m(x, y) == m(z, w)) != (m(y, z) == m(w, x))
            }
            LeftCancellation => {
                let (x, y, z) = (v[0], v[1], v[2]);
                y != z && m(x, y) == m(x, z)
            }
            RightCancellation => {
                let (x, y, z) = (v[0], v[1], v[2]);
                y != z && m(y, x) == m(z, x)
            }
            RightSolvability => {
                let (x, y) = (v[0], v[1]);
                !t.row(x).contains(&y)
            }
            LatinSquare => {
                let (x, y, z) = (v[0], v[1], v[2]);
                y != z && (m(x, y) == m(x, z) || m(y, x) == m(z, x))
            }
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "tuple")]
pub enum Verdict {
    Holds,
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Checks `id` over every variable tuple, returning the lexicographically
/// least violating tuple if there is one.
pub fn check_identity(t: &CayleyTable, id: IdentityId) -> Verdict {
    let n = t.order();
    let arity = id.arity();
    let mut v = vec![0usize; arity];
    loop {
        if id.violated_by(t, &v) {
            return Verdict::Counterexample(v);
        }
        // odometer, last variable fastest
        let mut i = arity;
        loop {
            if i == 0 {
                return Verdict::Holds;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Per-identity verdicts for one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub verdicts: Vec<(IdentityId, Verdict)>,
}

impl IdentityReport {
    pub fn check(t: &CayleyTable, ids: &[IdentityId]) -> Self {
        IdentityReport {
            verdicts: ids.iter().map(|&id| (id, check_identity(t, id))).collect(),
        }
    }

    pub fn all(t: &CayleyTable) -> Self {
        Self::check(t, &IdentityId::ALL)
    }

    pub fn get(&self, id: IdentityId) -> Option<&Verdict> {
        self.verdicts.iter().find(|(i, _)| *i == id).map(|(_, v)| v)
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.holds())
    }
}

/// Decides whether `t` is a quadratical quasigroup: a latin square that is
/// idempotent, bookend and medial.
pub fn is_quadratical(t: &CayleyTable) -> (bool, IdentityReport) {
    // cheap checks first so that the quartic mediality scan only runs on
    // plausible candidates
    let mut verdicts = Vec::with_capacity(4);
    for id in [
        IdentityId::LatinSquare,
        IdentityId::Idempotency,
        IdentityId::Bookend,
        IdentityId::Mediality,
    ] {
        let v = check_identity(t, id);
        let ok = v.holds();
        verdicts.push((id, v));
        if !ok {
            return (false, IdentityReport { verdicts });
        }
    }
    (true, IdentityReport { verdicts })
}
