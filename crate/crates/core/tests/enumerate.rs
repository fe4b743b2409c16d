use std::collections::BTreeSet;
use std::fs;

use quadlat::enumerate::*;
use quadlat::fixtures::{transcribed_classification, transcribed_k_table};
use quadlat::linear::quadratical_over_zm;
use quadlat::translatable::all_valid_k;
use quadlat::Error;

fn row(m: u64, a: u64, b: u64, k: u64) -> ClassificationRow {
    ClassificationRow { m, a, b, k }
}

/// Brute-force forms on `Z_m`: every `a` with `2a² − 2a + 1 ≡ 0` and the
/// least `k` in `1..m` with `(a − 1)k ≡ a`.
fn brute_force(m: u64) -> Vec<ClassificationRow> {
    (0..m)
        .filter(|&a| (2 * a * a + 1) % m == (2 * a) % m)
        .map(|a| {
            let k = (1..m).find(|&k| ((a + m - 1) * k) % m == a).expect("an index exists");
            row(m, a, (m + 1 - a) % m, k)
        })
        .collect()
}

#[test]
fn sweep_agrees_with_brute_force() {
    let rows = sweep(2, 400).unwrap();
    let expected: Vec<ClassificationRow> = (2..=400).flat_map(brute_force).collect();
    assert_eq!(rows, expected);
}

#[test]
fn dual_indices_complement() {
    let rows = sweep(2, 1200).unwrap();
    let index: std::collections::BTreeMap<(u64, u64), u64> = rows.iter().map(|r| ((r.m, r.a), r.k)).collect();
    for r in &rows {
        r.check().unwrap();
        assert_eq!((r.a + r.b) % r.m, 1);
        assert_eq!(index[&(r.m, r.b)] + r.k, r.m, "{r}");
    }
}

#[test]
fn indices_match_translatability_of_tables() {
    for r in sweep(2, 101).unwrap() {
        let t = quadratical_over_zm(r.m, r.a).unwrap();
        let natural: Vec<usize> = (0..r.m as usize).collect();
        assert_eq!(all_valid_k(&t, &natural).unwrap(), BTreeSet::from([r.k as usize]), "{r}");
    }
}

#[test]
fn scan_and_classify_agree() {
    let scan = scan_k_table(700, u64::MAX).unwrap();
    let mut reps: Vec<ClassificationRow> = scan.into_iter().filter(|r| r.a < r.b).collect();
    reps.sort_by_key(|r| (r.m, r.a));
    assert_eq!(reps, classify(700).unwrap());
}

#[test]
fn scan_examples() {
    let rows = scan_k_table(1200, 40).unwrap();
    for r in [row(37, 16, 22, 6), row(13, 3, 11, 8), row(65, 29, 37, 8), row(5, 2, 4, 2), row(257, 121, 137, 16)] {
        assert!(rows.contains(&r), "{r}");
    }
    assert!(rows.iter().all(|r| r.k < 40 && r.m <= 1200));
    assert!(rows.windows(2).all(|w| (w[0].k, w[0].m, w[0].a) < (w[1].k, w[1].m, w[1].a)));
    assert!(scan_k_table(4, 2).unwrap().is_empty());
}

#[test]
fn classify_examples() {
    let rows = classify(500).unwrap();
    for r in [row(65, 24, 42, 18), row(65, 29, 37, 8), row(493, 96, 398, 302)] {
        assert!(rows.contains(&r), "{r}");
    }
    assert_eq!(classify(6).unwrap(), vec![row(5, 2, 4, 2)]);
}

#[test]
fn transcriptions_against_formulas() {
    let scan = scan_k_table(1200, 40).unwrap();
    let report = discrepancy_report(&scan, &transcribed_k_table(), |r| r.m <= 1200);
    let summary: Vec<(DiscrepancyKind, u64, u64)> = report
        .iter()
        .map(|d| {
            let t = d.transcribed.or(d.computed).unwrap();
            (d.kind.clone(), t.m, t.a)
        })
        .collect();
    assert_eq!(
        summary,
        vec![
            (DiscrepancyKind::Mismatch, 13, 11),
            (DiscrepancyKind::OutOfRange, 1297, 631),
            (DiscrepancyKind::Mismatch, 685, 667),
        ]
    );
    assert_eq!(report[0].computed.unwrap().b, 3);
    assert_eq!(report[0].transcribed.unwrap().b, 7);
    assert_eq!(report[2].computed.unwrap().b, 19);
    assert_eq!(report[2].transcribed.unwrap().b, 198);
    assert!(report[0].to_string().contains("b transcribed 7 but 1-a mod m = 3"));

    let classified = classify(500).unwrap();
    assert!(discrepancy_report(&classified, &transcribed_classification(), |r| r.m <= 500).is_empty());
    let doubles: BTreeSet<u64> = classified
        .windows(2)
        .filter(|w| w[0].m == w[1].m)
        .map(|w| w[0].m)
        .collect();
    let listed = [65, 85, 145, 185, 205, 221, 265, 305, 325, 365, 377, 425, 445, 481, 485, 493];
    assert_eq!(doubles, BTreeSet::from(listed));
}

#[test]
fn rendering() {
    let scan = scan_k_table(100, 10).unwrap();
    let csv = render(&scan, TableKind::Scan, Format::Csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,m,a,b"));
    assert_eq!(lines.next(), Some("2,5,2,4"));
    assert_eq!(read_csv(&csv, "scan.csv".as_ref()).unwrap(), scan);

    assert_eq!(render(&[], TableKind::Scan, Format::Csv).unwrap(), "k,m,a,b\n");
    assert_eq!(render(&[], TableKind::Classify, Format::Csv).unwrap(), "m,a,b,k\n");

    let classified = classify(100).unwrap();
    let json = render(&classified, TableKind::Classify, Format::Json).unwrap();
    let parsed: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed[0]["m"], 5);
    assert_eq!(parsed.len(), classified.len());
    let back: Vec<ClassificationRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, classified);

    let scan_json = render(&scan, TableKind::Scan, Format::Json).unwrap();
    assert!(scan_json.trim_start().starts_with("[\n  {\n    \"k\": 2"));
    assert_eq!(render(&scan, TableKind::Scan, Format::Json).unwrap(), scan_json);
}

#[test]
fn emit_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let rows = classify(200).unwrap();
    emit(&rows, TableKind::Classify, Format::Csv, &path).unwrap();
    let first = fs::read(&path).unwrap();
    emit(&rows, TableKind::Classify, Format::Csv, &path).unwrap();
    assert_eq!(fs::read(&path).unwrap(), first);
    let missing = dir.path().join("no/such/dir/rows.csv");
    let err = emit(&rows, TableKind::Classify, Format::Csv, &missing).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("no/such/dir"));
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| render(&scan_k_table(900, 40).unwrap(), TableKind::Scan, Format::Csv).unwrap())
    };
    let one = run(1);
    assert_eq!(run(3), one);
    assert_eq!(run(8), one);
}

fn files(dir: &tempfile::TempDir) -> SweepFiles {
    SweepFiles {
        checkpoint: dir.path().join("sweep.ckpt"),
        rows: dir.path().join("sweep.csv"),
    }
}

#[test]
fn interrupted_sweep_resumes_to_the_same_output() {
    let one_shot = sweep(2, 1200).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let f = files(&dir);
    let first = resume_sweep(&f, 1200, Some(600)).unwrap();
    let last = read_checkpoint(&f.checkpoint).unwrap().unwrap();
    assert!((600..1200).contains(&last));
    assert!(first.iter().all(|r| r.m <= last));
    let second = resume_sweep(&f, 1200, None).unwrap();
    assert!(second.iter().all(|r| r.m > last));
    assert_eq!(read_checkpoint(&f.checkpoint).unwrap(), Some(1200));
    assert_eq!(load_sweep(&f).unwrap(), one_shot);
    assert_eq!(
        fs::read_to_string(&f.rows).unwrap(),
        render(&one_shot, TableKind::Classify, Format::Csv).unwrap()
    );
}

#[test]
fn fresh_sweep_without_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let f = files(&dir);
    assert_eq!(read_checkpoint(&f.checkpoint).unwrap(), None);
    assert_eq!(resume_sweep(&f, 300, None).unwrap(), sweep(2, 300).unwrap());
}

#[test]
fn checkpoint_beyond_bound_adds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let f = files(&dir);
    resume_sweep(&f, 400, None).unwrap();
    assert!(resume_sweep(&f, 200, None).unwrap().is_empty());
    assert_eq!(read_checkpoint(&f.checkpoint).unwrap(), Some(400));
}

#[test]
fn trailing_rows_past_the_checkpoint_are_discarded() {
    let dir = tempfile::tempdir().unwrap();
    let f = files(&dir);
    resume_sweep(&f, 300, None).unwrap();
    write_checkpoint(&f.checkpoint, 150).unwrap();
    resume_sweep(&f, 300, None).unwrap();
    assert_eq!(load_sweep(&f).unwrap(), sweep(2, 300).unwrap());
}

#[test]
fn corrupt_checkpoint_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let f = files(&dir);
    resume_sweep(&f, 100, None).unwrap();
    let before = fs::read(&f.rows).unwrap();
    for bad in ["", "last_m=\n", "last_m=12x\n", "m=12\n", "last_m=5\nlast_m=6\n", "last_m=-3\n"] {
        fs::write(&f.checkpoint, bad).unwrap();
        let err = resume_sweep(&f, 200, None).unwrap_err();
        assert!(matches!(err, Error::Checkpoint { .. }), "{bad:?}: {err}");
        assert_eq!(fs::read(&f.rows).unwrap(), before);
    }
}
