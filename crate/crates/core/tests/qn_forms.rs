use quadlat::fixtures::{qn, qn_dual, z3_square};
use quadlat::groupoid::{dual, find_isomorphism, is_isomorphism, is_quadratical, CayleyTable};
use quadlat::linear::{quadratical_over_zm, solve_quadratic_congruence};
use quadlat::qn::*;
use quadlat::Error;

fn choice_of(t: &CayleyTable, n: usize) -> usize {
    let v = t.mul(0, block_index(1, 1));
    (1..=4).find(|&k| block_index(n, k) == v).expect("aba·a lies in the last block")
}

fn completed(n: usize, choice: usize) -> (CayleyTable, Vec<Step>) {
    match complete_qn(n, choice).unwrap() {
        DeductionOutcome::Completed { table, trace } => (table, trace),
        other => panic!("n={n} choice={choice}: {other:?}"),
    }
}

#[test]
fn seeds_hold_in_reference_tables() {
    let tables: Vec<(usize, CayleyTable)> = (1..=4)
        .map(|n| (n, qn(n).unwrap()))
        .chain([1, 3, 4].map(|n| (n, qn_dual(n).unwrap())))
        .collect();
    for (n, t) in tables {
        let c = choice_of(&t, n);
        for s in qn_seeds(n, c).unwrap() {
            assert_eq!(t.mul(s.cell.0, s.cell.1), s.value, "n={n} choice={c} {s:?}");
        }
    }
}

#[test]
fn completion_outcomes_for_small_n() {
    let expected: [(usize, [&str; 4]); 4] = [
        (1, ["contradiction", "completed", "contradiction", "completed"]),
        (2, ["contradiction", "completed", "contradiction", "contradiction"]),
        (3, ["completed", "completed", "contradiction", "contradiction"]),
        (4, ["stuck", "completed", "completed", "contradiction"]),
    ];
    for (n, kinds) in expected {
        for c in 1..=4 {
            let got = match complete_qn(n, c).unwrap() {
                DeductionOutcome::Completed { .. } => "completed",
                DeductionOutcome::Contradiction(_) => "contradiction",
                DeductionOutcome::Stuck(_) => "stuck",
            };
            assert_eq!(got, kinds[c - 1], "n={n} choice={c}");
        }
    }
}

#[test]
fn completions_equal_reference_tables() {
    let cases = [
        (1, 2, qn(1)),
        (1, 4, qn_dual(1)),
        (2, 2, qn(2)),
        (3, 1, qn(3)),
        (3, 2, qn_dual(3)),
        (4, 2, qn(4)),
        (4, 3, qn_dual(4)),
    ];
    for (n, c, reference) in cases {
        let (table, trace) = completed(n, c);
        assert_eq!(table, reference.unwrap(), "n={n} choice={c}");
        assert!(is_quadratical(&table).0);
        replay_completion(n, c, &trace, &table).unwrap();
    }
}

#[test]
fn contradictions_replay() {
    for (n, c) in [(1, 1), (1, 3), (2, 1), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        match complete_qn(n, c).unwrap() {
            DeductionOutcome::Contradiction(r) => replay_refutation(n, c, &r).unwrap(),
            other => panic!("n={n} choice={c}: {other:?}"),
        }
    }
}

#[test]
fn tampered_traces_fail_replay() {
    let DeductionOutcome::Contradiction(r) = complete_qn(2, 4).unwrap() else {
        panic!("expected a contradiction");
    };
    let mut bad = r.clone();
    let last = bad.steps.len() - 1;
    bad.steps[last].value = (bad.steps[last].value + 1) % 9;
    assert!(matches!(replay_refutation(2, 4, &bad), Err(Error::Invariant(_))));
    let mut cut = r.clone();
    cut.steps.clear();
    assert!(replay_refutation(2, 4, &cut).is_err());
    assert!(replay_refutation(2, 2, &r).is_err());

    let (table, mut trace) = completed(2, 2);
    trace.pop();
    assert!(replay_completion(2, 2, &trace, &table).is_err());
}

#[test]
fn completions_match_linear_forms() {
    for (n, c, m, a) in [(1, 2, 5, 4), (1, 4, 5, 2), (3, 1, 13, 11), (4, 2, 17, 11)] {
        let (table, _) = completed(n, c);
        let linear = quadratical_over_zm(m, a).unwrap();
        let phi = find_isomorphism(&table, &linear).expect("isomorphic");
        assert!(is_isomorphism(&table, &linear, &phi));
    }
    assert!(solve_quadratic_congruence(9).is_empty());
}

#[test]
fn duals_follow_the_element_map() {
    for n in [1, 3, 4] {
        let map = dual_element_map(n);
        let relabelled = dual(&qn(n).unwrap()).relabel(&map).unwrap();
        assert_eq!(relabelled.entries(), qn_dual(n).unwrap().entries(), "n={n}");
    }
}

#[test]
fn q2_is_self_dual() {
    let q2 = qn(2).unwrap();
    let d = dual(&q2);
    let phi = find_isomorphism(&q2, &d).expect("self-dual");
    assert!(is_isomorphism(&q2, &d, &phi));
}

#[test]
fn chains_of_reference_tables() {
    let q2 = qn(2).unwrap();
    let (a, b) = (block_index(1, 1), block_index(1, 4));
    let d = h_chain(&q2, a, b, 2).unwrap();
    let m = |x, y| q2.mul(x, y);
    let (ab, ba) = (m(a, b), m(b, a));
    assert_eq!(d.blocks[0], [a, ab, ba, b]);
    assert_eq!(d.blocks[1], [m(a, ab), m(ab, b), m(ba, a), m(b, ba)]);
    assert_eq!(d.blocks[1], [5, 6, 7, 8]);
    assert_eq!(d.center, 0);
    assert!(d.covers());

    let q1 = qn(1).unwrap();
    let d1 = h_chain(&q1, a, b, 1).unwrap();
    assert!(d1.covers());
    assert_eq!(d1.canonical_table(&q1).unwrap(), q1);
}

#[test]
fn detect_form_on_reference_tables() {
    assert_eq!(detect_form(&qn(2).unwrap()).unwrap().map(|f| f.0), Some(2));
    assert_eq!(detect_form(&z3_square(1).unwrap()).unwrap(), Some((2, 0, 1)));
    assert_eq!(detect_form(&quadratical_over_zm(17, 11).unwrap()).unwrap().map(|f| f.0), Some(4));
    for (m, a) in [(25, 22), (25, 4)] {
        assert_eq!(detect_form(&quadratical_over_zm(m, a).unwrap()).unwrap(), None);
    }
}

#[test]
fn canonical_form_of_a_detected_table() {
    let t = quadratical_over_zm(13, 3).unwrap();
    let (n, a, b) = detect_form(&t).unwrap().unwrap();
    let canon = h_chain(&t, a, b, n).unwrap().canonical_table(&t).unwrap();
    let c = choice_of(&canon, n);
    for s in qn_seeds(n, c).unwrap() {
        assert_eq!(canon.mul(s.cell.0, s.cell.1), s.value);
    }
}

#[test]
fn trace_export_format() {
    let (_, trace) = completed(1, 2);
    let labels = canonical_labels(1, false);
    let text = render_trace(&trace, &labels);
    assert_eq!(text.lines().count(), trace.len());
    for line in text.lines() {
        assert!(line.starts_with("cell("), "{line}");
        assert!(line.contains(" := ") && line.contains("  by ") && line.contains(" from ["), "{line}");
    }
    assert!(text.lines().next().unwrap().starts_with("cell(aba,aba) := aba  by seed:idempotency"));
}

#[test]
fn q6_is_refuted() {
    let report = refute_q6().unwrap();
    assert!(report.all_refuted());
    for (c, outcome) in &report.cases {
        let CaseOutcome::Refuted(r) = outcome else {
            panic!("choice {c}: {outcome:?}");
        };
        assert!(r.depth() <= Q6_SPLIT_DEPTH);
        replay_refutation(6, *c, r).unwrap();
    }
}

#[test]
fn invalid_arguments() {
    assert!(complete_qn(0, 1).is_err());
    assert!(complete_qn(2, 5).is_err());
    assert!(complete_qn(2, 0).is_err());
}
