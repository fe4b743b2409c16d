use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use quadlat::fixtures::{qn, qn_dual, z3_square};
use quadlat::groupoid::*;
use quadlat::linear::{linear_table, quadratical_over_zm, solve_quadratic_congruence, LinearSpec};

fn q1_products() -> [CayleyTable; 4] {
    let q1 = qn(1).unwrap();
    let q1d = dual(&q1);
    [
        direct_product(&q1, &q1),
        direct_product(&q1, &q1d),
        direct_product(&q1d, &q1),
        direct_product(&q1d, &q1d),
    ]
}

/// Quadratical tables built by every route the library offers.
fn constructed() -> &'static [CayleyTable] {
    static POOL: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for m in 2..=101 {
            for a in solve_quadratic_congruence(m) {
                pool.push(quadratical_over_zm(m, a).unwrap());
            }
        }
        pool.extend((1..=4).map(|n| qn(n).unwrap()));
        pool.extend([1, 3, 4].map(|n| qn_dual(n).unwrap()));
        pool.extend((1..=6).map(|i| z3_square(i).unwrap()));
        pool.extend(q1_products());
        let q2 = qn(2).unwrap();
        pool.push(direct_product(&q2, &qn(1).unwrap()));
        pool.push(direct_product(&quadratical_over_zm(13, 3).unwrap(), &q2).relabel(&shuffle(117)).unwrap());
        pool
    })
}

/// A fixed non-trivial permutation of `0..n`.
fn shuffle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (7 * i + 3) % n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quadratical_laws_hold_at_random_points(
        (i, v) in (0..constructed().len()).prop_flat_map(|i| {
            let n = constructed()[i].order();
            (Just(i), proptest::collection::vec(0..n, 4))
        })
    ) {
        let t = &constructed()[i];
        for id in IdentityId::QUADRATICAL_LAWS {
            prop_assert!(!id.violated_by(t, &v), "{} fails at {:?} in table {}", id.name(), v, i);
        }
    }

    #[test]
    fn linear_groupoid_is_quadratical_iff_form_matches(
        (m, a, b, c) in (2u64..=30).prop_flat_map(|m| (Just(m), 0..m, 0..m, 0..m))
    ) {
        let spec = LinearSpec::new(m, a as i64, b as i64, c as i64).unwrap();
        let expected = c == 0 && (a + b) % m == 1 && (2 * a * a + 1 + 2 * m * m - 2 * a) % m == 0;
        let t = linear_table(&spec);
        prop_assert_eq!(is_quadratical(&t).0, expected);
        prop_assert_eq!(spec.is_quadratical_form(), expected);
    }

    #[test]
    fn relabelled_copies_are_isomorphic(
        (i, phi) in (0..constructed().len())
            .prop_filter("orders up to 30", |&i| constructed()[i].order() <= 30)
            .prop_flat_map(|i| {
                let n = constructed()[i].order();
                (Just(i), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            })
    ) {
        let t = &constructed()[i];
        let image = t.relabel(&phi).unwrap();
        let found = find_isomorphism(t, &image).expect("a relabelled copy is isomorphic");
        prop_assert!(is_isomorphism(t, &image, &found));
        prop_assert!(is_quadratical(&image).0);
        prop_assert!(is_quadratical(&dual(&image)).0);
    }
}

#[test]
fn constructed_tables_satisfy_every_law() {
    for (i, t) in constructed().iter().enumerate() {
        assert_eq!(t.order() % 4, 1, "table {i}");
        if t.order() > 30 {
            continue;
        }
        let report = IdentityReport::check(t, &IdentityId::ALL);
        assert!(report.all_hold(), "table {i}: {report:?}");
    }
}

#[test]
fn four_cycles_partition_the_rest() {
    for (i, t) in constructed().iter().enumerate() {
        let n = t.order();
        let bases: Vec<(usize, usize)> = if n <= 30 {
            (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
        } else {
            vec![(0, 1), (n - 1, 2)]
        };
        if n <= 30 {
            let (a, b) = bases[0];
            let around = four_cycles_around(t, t.mul(t.mul(a, b), a)).unwrap();
            assert_eq!(four_cycles(t, a, b).unwrap(), around);
        }
        for (a, b) in bases {
            let center = t.mul(t.mul(a, b), a);
            let cycles = four_cycles_around(t, center).unwrap();
            assert_eq!(cycles.len(), (n - 1) / 4, "table {i}");
            let mut seen = BTreeSet::from([center]);
            for c in &cycles {
                for k in 0..4 {
                    assert_eq!(t.mul(c[k], c[(k + 1) % 4]), center);
                    assert!(seen.insert(c[k]), "table {i}: {} repeats", c[k]);
                }
                assert_eq!(c[3], t.mul(c[0], c[2]));
                assert_eq!(c[0], *c.iter().min().unwrap());
            }
            assert_eq!(seen.len(), n);
        }
    }
}

#[test]
fn small_reference_cycles() {
    let q1 = qn(1).unwrap();
    let e = |t: &CayleyTable, s: &str| t.element(s).unwrap();
    let (a, ab, ba, b) = (e(&q1, "11"), e(&q1, "12"), e(&q1, "13"), e(&q1, "14"));
    assert_eq!(four_cycles(&q1, a, b).unwrap(), vec![[a, ba, b, ab]]);

    let q2 = qn(2).unwrap();
    let cycles = four_cycles(&q2, e(&q2, "11"), e(&q2, "14")).unwrap();
    let blocks: Vec<BTreeSet<usize>> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
    assert_eq!(blocks, vec![BTreeSet::from([1, 2, 3, 4]), BTreeSet::from([5, 6, 7, 8])]);
}

#[test]
fn product_cycles_around_a_pair() {
    let [pp, ..] = q1_products();
    let (aba, a, ab, ba, b) = (0, 1, 2, 3, 4);
    let p = |x: usize, y: usize| 5 * x + y;
    let expected: BTreeSet<BTreeSet<usize>> = [
        [p(a, a), p(a, aba), p(a, ab), p(a, ba)],
        [p(b, ab), p(aba, ba), p(ba, a), p(ab, aba)],
        [p(ab, b), p(b, b), p(aba, b), p(ba, b)],
        [p(ab, ab), p(b, ba), p(aba, a), p(ba, aba)],
        [p(ba, ba), p(ab, a), p(b, aba), p(aba, ab)],
        [p(aba, aba), p(ba, ab), p(ab, ba), p(b, a)],
    ]
    .into_iter()
    .map(BTreeSet::from)
    .collect();
    let got: BTreeSet<BTreeSet<usize>> = four_cycles_around(&pp, p(a, b))
        .unwrap()
        .into_iter()
        .map(BTreeSet::from)
        .collect();
    assert_eq!(got, expected);

    for cycle in &expected {
        let members: Vec<usize> = cycle.iter().copied().collect();
        let closed = generated_subgroupoid(&pp, &members[..2]).unwrap();
        let mut with_center = cycle.clone();
        with_center.insert(p(a, b));
        assert_eq!(closed, with_center);
    }
}

#[test]
fn two_generation_of_products() {
    let [pp, pd, dp, dd] = q1_products();
    let (a, ab, ba, b) = (1, 2, 3, 4);
    let p = |x: usize, y: usize| 5 * x + y;
    for t in [&pp, &dd] {
        let r = two_generation_report(t);
        assert!(!r.some_pair && !r.all_distinct_pairs);
    }
    assert_eq!(generated_subgroupoid(&pd, &[p(a, ba), p(ab, b)]).unwrap().len(), 25);
    assert_eq!(generated_subgroupoid(&dp, &[p(ba, a), p(b, ab)]).unwrap().len(), 25);
    assert!(!two_generation_report(&pd).all_distinct_pairs);

    for n in 1..=2 {
        let r = two_generation_report(&qn(n).unwrap());
        assert!(r.all_distinct_pairs, "Q{n}");
    }
    let q1 = qn(1).unwrap();
    assert_eq!(generated_subgroupoid(&q1, &[1, 4]).unwrap().len(), 5);
}

#[test]
fn duals_of_products() {
    let q1 = qn(1).unwrap();
    let q1d = dual(&q1);
    let [pp, pd, dp, dd] = q1_products();
    assert_eq!(dual(&pp), dd);
    assert_eq!(dual(&pd), dp);
    for t in [&pp, &pd, &dp, &dd] {
        assert!(is_quadratical(t).0);
    }
    assert!(is_quadratical(&q1d).0);
}

#[test]
fn linear_dual_swaps_coefficients() {
    let t = linear_table(&LinearSpec::new(5, 2, 4, 0).unwrap());
    assert_eq!(dual(&t), linear_table(&LinearSpec::new(5, 4, 2, 0).unwrap()));
}

#[test]
fn isomorphism_preserves_quadraticality() {
    let pool = constructed();
    let small: Vec<&CayleyTable> = pool.iter().filter(|t| t.order() == 13).collect();
    for t1 in &small {
        for t2 in &small {
            if let Some(phi) = find_isomorphism(t1, t2) {
                assert!(is_isomorphism(t1, t2, &phi));
            }
        }
    }
    let z13 = CayleyTable::from_fn(13, |x, y| (x + y) % 13).unwrap();
    assert!(find_isomorphism(&z13, small[0]).is_none());
}
