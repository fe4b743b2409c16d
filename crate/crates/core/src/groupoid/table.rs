//! The Cayley table of a finite groupoid and its text format.
//!
//! The text format is line oriented:
//!
//! ```text
//! 3
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! # labels: x y z
//! ```
//!
//! The first line is the order `n`, followed by `n` rows of `n` space
//! separated element indices (row `x` lists `x·0 … x·(n−1)`). An optional
//! trailing `# labels:` comment names the elements. Other lines starting with
//! `#` and blank lines are ignored.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `n × n` operation table over the elements `0..n`.
///
/// Immutable once built; every constructor checks that all entries are in
/// range and that labels, if any, are `n` distinct strings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_flat(n, entries)
    }

    /// Builds a table from a row-major slice of `n²` entries.
    pub fn from_flat(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Malformed(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&e| e >= n) {
            return Err(Error::Malformed(format!(
                "entry {}·{} = {} is out of range for order {n}",
                pos / n,
                pos % n,
                entries[pos]
            )));
        }
        Ok(CayleyTable {
            n,
            entries,
            labels: None,
        })
    }

    pub fn from_fn(n: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                entries.push(op(x, y));
            }
        }
        Self::from_flat(n, entries)
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n {
            return Err(Error::Malformed(format!(
                "{} labels given for a table of order {}",
                labels.len(),
                self.n
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("label {l:?} is empty or has whitespace")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::Malformed(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// The product `x·y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[usize] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.mul(x, y)).collect()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks an element up by label, falling back to a numeric index.
    pub fn element(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.n)
    }

    /// Every row and every column is a permutation of the carrier.
    pub fn is_latin_square(&self) -> bool {
        let n = self.n;
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                let v = self.mul(x, y);
                if seen[v] == x {
                    return false;
                }
                seen[v] = x;
            }
        }
        seen.fill(usize::MAX);
        for y in 0..n {
            for x in 0..n {
                let v = self.mul(x, y);
                if seen[v] == y {
                    return false;
                }
                seen[v] = y;
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                (0..self.n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// All squares coincide.
    pub fn is_unipotent(&self) -> bool {
        (0..self.n).all(|x| self.mul(x, x) == self.mul(0, 0))
    }

    /// The left division `x\v`: the `y` with `x·y = v`, if any.
    pub fn left_div(&self, x: usize, v: usize) -> Option<usize> {
        self.row(x).iter().position(|&e| e == v)
    }

    /// The image of this table under the bijection `phi`: the result `s`
    /// satisfies `s[phi(x)][phi(y)] = phi(x·y)`. Labels travel with their
    /// elements.
    pub fn relabel(&self, phi: &[usize]) -> Result<CayleyTable> {
        check_permutation(phi, self.n)?;
        let n = self.n;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[phi[x] * n + phi[y]] = phi[self.mul(x, y)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (x, name) in l.iter().enumerate() {
                out[phi[x]] = name.clone();
            }
            out
        });
        Ok(CayleyTable { n, entries, labels })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation has length {}, expected {n}",
            p.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidArgument(format!("{p:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.entries.chunks(self.n) {
            let mut first = true;
            for v in row {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        if let Some(labels) = &self.labels {
            writeln!(f, "# labels: {}", labels.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(\n{self})")
    }
}

impl FromStr for CayleyTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut order: Option<usize> = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut labels: Option<Vec<String>> = None;
        for (i, raw) in s.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(rest) = comment.trim_start().strip_prefix("labels:") {
                    labels = Some(rest.split_whitespace().map(str::to_owned).collect());
                }
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("expected a non-negative integer, found {tok:?}"),
                })
            };
            match order {
                None => {
                    let mut toks = line.split_whitespace();
                    let n = parse(toks.next().unwrap_or_default())?;
                    if toks.next().is_some() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "the first line must hold only the order".into(),
                        });
                    }
                    order = Some(n);
                }
                Some(n) => {
                    let row = line.split_whitespace().map(parse).collect::<Result<Vec<_>>>()?;
                    if row.len() != n {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("expected {n} entries, found {}", row.len()),
                        });
                    }
                    if rows.len() == n {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("more than {n} rows"),
                        });
                    }
                    rows.push(row);
                }
            }
        }
        let n = order.ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        if rows.len() != n {
            return Err(Error::Parse {
                line: s.lines().count(),
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        let table = CayleyTable::new(rows)?;
        match labels {
            Some(l) => table.with_labels(l),
            None => Ok(table),
        }
    }
}
