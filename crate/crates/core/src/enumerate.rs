//! Sweeps over the modulus `m` listing every quadratical quasigroup
//! `ax + (1−a)y` on `Z_m` with its translatability index.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{solve_quadratic_congruence, translatability_k_quadratical};

/// One quadratical form `ax + by` on `Z_m` with `b ≡ 1 − a` and index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub m: u64,
    pub a: u64,
    pub b: u64,
    pub k: u64,
}

impl ClassificationRow {
    pub fn compute(m: u64, a: u64) -> Result<Self> {
        let k = translatability_k_quadratical(m, a)?;
        Ok(ClassificationRow {
            m,
            a,
            b: (m + 1 - a % m) % m,
            k,
        })
    }

    /// Re-derives every field from `m` and `a`, and checks that the dual
    /// form has index `m − k`.
    pub fn check(&self) -> Result<()> {
        let fresh = Self::compute(self.m, self.a)?;
        if fresh != *self {
            return Err(Error::Invariant(format!("row {self} recomputes as {fresh}")));
        }
        let dual = translatability_k_quadratical(self.m, self.b)?;
        if dual + self.k != self.m {
            return Err(Error::Invariant(format!(
                "row {self}: dual index {dual} does not complement k to m"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ClassificationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, a={}, b={}, k={})", self.m, self.a, self.b, self.k)
    }
}

/// Column layout of an emitted table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// `k,m,a,b`, sorted by `(k, m, a)`.
    Scan,
    /// `m,a,b,k`, sorted by `(m, a)`.
    Classify,
}

impl TableKind {
    pub fn header(self) -> [&'static str; 4] {
        match self {
            TableKind::Scan => ["k", "m", "a", "b"],
            TableKind::Classify => ["m", "a", "b", "k"],
        }
    }

    fn fields(self, r: &ClassificationRow) -> [u64; 4] {
        match self {
            TableKind::Scan => [r.k, r.m, r.a, r.b],
            TableKind::Classify => [r.m, r.a, r.b, r.k],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Every row with `from ≤ m ≤ to`, sorted by `(m, a)`. Each modulus is an
/// independent shard; the result does not depend on the worker count.
pub fn sweep(from: u64, to: u64) -> Result<Vec<ClassificationRow>> {
    let from = from.max(2);
    if from > to {
        return Ok(Vec::new());
    }
    let shards: Vec<Vec<ClassificationRow>> = (from..=to)
        .into_par_iter()
        .map(|m| {
            solve_quadratic_congruence(m)
                .into_iter()
                .map(|a| {
                    let row = ClassificationRow::compute(m, a)?;
                    row.check()?;
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(shards.into_iter().flatten().collect())
}

/// Rows with `m ≤ max_m` and `k < max_k`, sorted by `(k, m, a)`.
pub fn scan_k_table(max_m: u64, max_k: u64) -> Result<Vec<ClassificationRow>> {
    Ok(scan_rows(sweep(2, max_m)?, max_k))
}

/// Restricts swept rows to `k < max_k` and sorts by `(k, m, a)`.
pub fn scan_rows(rows: Vec<ClassificationRow>, max_k: u64) -> Vec<ClassificationRow> {
    let mut rows: Vec<_> = rows.into_iter().filter(|r| r.k < max_k).collect();
    rows.sort_by_key(|r| (r.k, r.m, r.a));
    rows
}

/// One row per dual pair (the one with `a < b`), `m ≤ max_m`, sorted by
/// `(m, a)`.
pub fn classify(max_m: u64) -> Result<Vec<ClassificationRow>> {
    Ok(classify_rows(sweep(2, max_m)?))
}

pub fn classify_rows(rows: Vec<ClassificationRow>) -> Vec<ClassificationRow> {
    let mut rows: Vec<_> = rows.into_iter().filter(|r| r.a < r.b).collect();
    rows.sort_by_key(|r| (r.m, r.a));
    rows
}

#[derive(Serialize)]
struct ScanRecord {
    k: u64,
    m: u64,
    a: u64,
    b: u64,
}

/// CSV with a header line, or a JSON array of row objects.
pub fn render(rows: &[ClassificationRow], kind: TableKind, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |source| Error::Csv {
                path: PathBuf::from("<memory>"),
                source,
            };
            w.write_record(kind.header()).map_err(csv_err)?;
            for r in rows {
                w.write_record(kind.fields(r).map(|v| v.to_string())).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Invariant(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is ascii"))
        }
        Format::Json => {
            let json_err = |source| Error::Json {
                path: PathBuf::from("<memory>"),
                source,
            };
            let mut s = match kind {
                TableKind::Classify => serde_json::to_string_pretty(rows).map_err(json_err)?,
                TableKind::Scan => {
                    let recs: Vec<ScanRecord> = rows
                        .iter()
                        .map(|r| ScanRecord {
                            k: r.k,
                            m: r.m,
                            a: r.a,
                            b: r.b,
                        })
                        .collect();
                    serde_json::to_string_pretty(&recs).map_err(json_err)?
                }
            };
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn emit(rows: &[ClassificationRow], kind: TableKind, format: Format, path: &Path) -> Result<()> {
    let text = render(rows, kind, format)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Reads rows in either column layout, detected from the header.
pub fn read_csv(text: &str, origin: &Path) -> Result<Vec<ClassificationRow>> {
    let csv_err = |source| Error::Csv {
        path: origin.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    let kind = if header == TableKind::Scan.header() {
        TableKind::Scan
    } else if header == TableKind::Classify.header() {
        TableKind::Classify
    } else {
        return Err(Error::Invariant(format!("{}: unknown header {header:?}", origin.display())));
    };
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let v: Vec<u64> = rec
            .iter()
            .map(|f| f.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Invariant(format!("{}: {e}", origin.display())))?;
        if v.len() != 4 {
            return Err(Error::Invariant(format!("{}: expected 4 fields", origin.display())));
        }
        rows.push(match kind {
            TableKind::Scan => ClassificationRow {
                k: v[0],
                m: v[1],
                a: v[2],
                b: v[3],
            },
            TableKind::Classify => ClassificationRow {
                m: v[0],
                a: v[1],
                b: v[2],
                k: v[3],
            },
        });
    }
    Ok(rows)
}

/// Files backing a resumable sweep: the checkpoint holds `last_m=<int>`,
/// the rows file every row with `m ≤ last_m` in classify layout.
#[derive(Clone, Debug)]
pub struct SweepFiles {
    pub checkpoint: PathBuf,
    pub rows: PathBuf,
}

const CHUNK: u64 = 64;

/// `None` if the checkpoint does not exist; anything other than a single
/// `last_m=<int>` line is refused.
pub fn read_checkpoint(path: &Path) -> Result<Option<u64>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    let corrupt = |msg: &str| Error::Checkpoint {
        path: path.to_path_buf(),
        msg: msg.to_owned(),
    };
    let mut lines = text.lines();
    let line = lines.next().ok_or_else(|| corrupt("empty file"))?;
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(corrupt("unexpected extra lines"));
    }
    let value = line
        .strip_prefix("last_m=")
        .ok_or_else(|| corrupt("expected last_m=<int>"))?;
    value
        .parse::<u64>()
        .map(Some)
        .map_err(|_| corrupt("last_m is not a non-negative integer"))
}

pub fn write_checkpoint(path: &Path, last_m: u64) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("last_m={last_m}\n")).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Continues a sweep up to `max_m` from the checkpoint (or from the start
/// when none exists), persisting after every chunk of moduli. With
/// `stop_after`, returns once the checkpoint reaches that modulus. Returns
/// the rows computed by this call.
pub fn resume_sweep(files: &SweepFiles, max_m: u64, stop_after: Option<u64>) -> Result<Vec<ClassificationRow>> {
    let last = read_checkpoint(&files.checkpoint)?;
    let mut kept = match last {
        Some(last_m) => {
            let text = fs::read_to_string(&files.rows).map_err(|e| Error::Checkpoint {
                path: files.checkpoint.clone(),
                msg: format!("rows file {} unreadable: {e}", files.rows.display()),
            })?;
            let rows = read_csv(&text, &files.rows)?;
            rows.into_iter().filter(|r| r.m <= last_m).collect::<Vec<_>>()
        }
        None => Vec::new(),
    };
    fs::write(&files.rows, render(&kept, TableKind::Classify, Format::Csv)?)
        .map_err(|e| Error::io(&files.rows, e))?;
    let mut next = last.map_or(2, |l| l + 1).max(2);
    let mut fresh = Vec::new();
    while next <= max_m {
        let end = (next + CHUNK - 1).min(max_m);
        let rows = sweep(next, end)?;
        let mut f = fs::OpenOptions::new()
            .append(true)
            .open(&files.rows)
            .map_err(|e| Error::io(&files.rows, e))?;
        let body = render(&rows, TableKind::Classify, Format::Csv)?;
        let body = body.split_once('\n').map_or("", |(_, rest)| rest);
        f.write_all(body.as_bytes()).map_err(|e| Error::io(&files.rows, e))?;
        f.sync_all().map_err(|e| Error::io(&files.rows, e))?;
        write_checkpoint(&files.checkpoint, end)?;
        kept.extend_from_slice(&rows);
        fresh.extend(rows);
        next = end + 1;
        if stop_after.is_some_and(|s| end >= s) {
            break;
        }
    }
    Ok(fresh)
}

/// Every row persisted so far.
pub fn load_sweep(files: &SweepFiles) -> Result<Vec<ClassificationRow>> {
    let text = fs::read_to_string(&files.rows).map_err(|e| Error::io(&files.rows, e))?;
    read_csv(&text, &files.rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    /// Same `(m, a)`, different `b` or `k`.
    Mismatch,
    /// Transcribed row with no computed counterpart inside the bounds.
    Missing,
    /// Transcribed row whose modulus lies outside the swept range.
    OutOfRange,
    /// Computed row absent from the transcription.
    Extra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub kind: DiscrepancyKind,
    pub transcribed: Option<ClassificationRow>,
    pub computed: Option<ClassificationRow>,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.transcribed, &self.computed) {
            (DiscrepancyKind::Mismatch, Some(t), Some(c)) => {
                write!(f, "m={} a={}:", t.m, t.a)?;
                if t.b != c.b {
                    write!(f, " b transcribed {} but 1-a mod m = {};", t.b, c.b)?;
                }
                if t.k != c.k {
                    write!(f, " k transcribed {} but (a-1)k = a mod m gives {};", t.k, c.k)?;
                }
                Ok(())
            }
            (DiscrepancyKind::OutOfRange, Some(t), _) => write!(f, "{t} lies outside the swept range"),
            (DiscrepancyKind::Missing, Some(t), _) => write!(f, "{t} is not a quadratical form"),
            (DiscrepancyKind::Extra, _, Some(c)) => write!(f, "{c} is missing from the transcription"),
            _ => write!(f, "{:?}", self.kind),
        }
    }
}

/// Compares computed rows with a transcription, matching on `(m, a)`.
/// `in_range` says whether a transcribed row falls inside the computed
/// bounds.
pub fn discrepancy_report(
    computed: &[ClassificationRow],
    transcribed: &[ClassificationRow],
    in_range: impl Fn(&ClassificationRow) -> bool,
) -> Vec<Discrepancy> {
    let by_key: BTreeMap<(u64, u64), &ClassificationRow> = computed.iter().map(|r| ((r.m, r.a), r)).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for t in transcribed {
        if !in_range(t) {
            out.push(Discrepancy {
                kind: DiscrepancyKind::OutOfRange,
                transcribed: Some(*t),
                computed: None,
            });
            continue;
        }
        match by_key.get(&(t.m, t.a)) {
            Some(&c) => {
                seen.insert((c.m, c.a));
                if c != t {
                    out.push(Discrepancy {
                        kind: DiscrepancyKind::Mismatch,
                        transcribed: Some(*t),
                        computed: Some(*c),
                    });
                }
            }
            None => out.push(Discrepancy {
                kind: DiscrepancyKind::Missing,
                transcribed: Some(*t),
                computed: None,
            }),
        }
    }
    for c in computed {
        if !seen.contains(&(c.m, c.a)) {
            out.push(Discrepancy {
                kind: DiscrepancyKind::Extra,
                transcribed: None,
                computed: Some(*c),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        assert!(scan_k_table(4, 2).unwrap().is_empty());
        assert_eq!(
            classify(6).unwrap(),
            vec![ClassificationRow { m: 5, a: 2, b: 4, k: 2 }]
        );
    }

    #[test]
    fn scan_first_rows() {
        let rows = scan_k_table(100, 10).unwrap();
        assert_eq!(rows[0], ClassificationRow { m: 5, a: 2, b: 4, k: 2 });
        assert_eq!(rows[1], ClassificationRow { m: 5, a: 4, b: 2, k: 3 });
        assert!(rows.windows(2).all(|w| (w[0].k, w[0].m, w[0].a) < (w[1].k, w[1].m, w[1].a)));
    }

    #[test]
    fn csv_and_json_layouts() {
        let rows = classify(20).unwrap();
        let csv = render(&rows, TableKind::Scan, Format::Csv).unwrap();
        assert!(csv.starts_with("k,m,a,b\n2,5,2,4\n"));
        let csv = render(&[], TableKind::Classify, Format::Csv).unwrap();
        assert_eq!(csv, "m,a,b,k\n");
        let json = render(&rows, TableKind::Classify, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["m"], 5);
        assert_eq!(render(&[], TableKind::Scan, Format::Json).unwrap(), "[]\n");
    }

    #[test]
    fn csv_round_trip() {
        let rows = classify(200).unwrap();
        for kind in [TableKind::Scan, TableKind::Classify] {
            let text = render(&rows, kind, Format::Csv).unwrap();
            assert_eq!(read_csv(&text, Path::new("x")).unwrap(), rows);
        }
    }

    #[test]
    fn checkpoint_parsing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cp");
        assert_eq!(read_checkpoint(&p).unwrap(), None);
        write_checkpoint(&p, 600).unwrap();
        assert_eq!(read_checkpoint(&p).unwrap(), Some(600));
        for bad in ["", "last_m=x\n", "m=4\n", "last_m=3\nlast_m=4\n", "last_m=-1"] {
            fs::write(&p, bad).unwrap();
            assert!(matches!(read_checkpoint(&p), Err(Error::Checkpoint { .. })), "{bad:?}");
        }
    }

    #[test]
    fn report_flags_each_kind() {
        let computed = classify(30).unwrap();
        let mut transcribed = computed.clone();
        transcribed[1].b = 7;
        transcribed.remove(2);
        transcribed.push(ClassificationRow { m: 9, a: 1, b: 0, k: 1 });
        transcribed.push(ClassificationRow { m: 99, a: 1, b: 0, k: 1 });
        let report = discrepancy_report(&computed, &transcribed, |r| r.m <= 30);
        let kinds: Vec<_> = report.iter().map(|d| d.kind.clone()).collect();
        assert_eq!(
            kinds,
            [
                DiscrepancyKind::Mismatch,
                DiscrepancyKind::Missing,
                DiscrepancyKind::OutOfRange,
                DiscrepancyKind::Extra
            ]
        );
    }
}
