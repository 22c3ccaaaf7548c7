use hallrad::catalog::{alternating, build_psl2, build_psl3, cyclic, suite, symmetric, DEFAULT_Q_CAP};
use hallrad::constructions::{direct_product, generated_fixtures, wreath_top};
use hallrad::permgroup::{is_solvable, seeded_rng};
use hallrad::series::{composition_factors, radical_series, SimpleFactorId};
use hallrad::theorems::{
    analyze_pair, check_criteria, check_factors_for_prime, check_maroti, check_factor_filter,
    check_factor_filter_for_prime, Criterion, Verdict,
};
use hallrad::{Limits, PermGroup};

#[test]
fn generated_fixtures_have_no_findings() {
    let limits = Limits::default();
    let fixtures = generated_fixtures(&limits).unwrap();
    assert!(fixtures.len() >= 20);
    for f in fixtures {
        let r = analyze_pair(&f.w, &f.s, &limits).unwrap();
        assert!(r.findings.is_empty(), "{}: {:?}", f.name, r.findings);
        assert_eq!(r.m, (f.p as u128).pow(f.expected_index_exponent), "{}", f.name);
        if r.g_is_solvable {
            assert_eq!(r.series.k, 0, "{}", f.name);
            assert!(r.factor_check.passed);
        }
    }
}

#[test]
fn catalog_cases_have_no_findings() {
    let limits = Limits::default();
    for case in suite(DEFAULT_Q_CAP, false).unwrap() {
        let r = analyze_pair(&case.t, &case.h, &limits).unwrap();
        assert!(r.findings.is_empty(), "{}: {:?}", case.t_name, r.findings);
        assert!(r.factor_check.passed);
        assert_eq!(r.rad_bound_exponent_4.is_none(), case.p == 13);
    }
}

#[test]
fn alt5_wreath_c2_bound() {
    let limits = Limits::default();
    let a5 = alternating(5);
    let a4 = a5.point_stabilizer(4).unwrap();
    let w = wreath_top(&a5, &a4, &cyclic(2), &limits).unwrap();
    let r = analyze_pair(&w.w, &w.s, &limits).unwrap();
    assert_eq!((r.p, r.alpha, r.m), (5, 2, 25));
    assert_eq!(r.series.rad_order, 1);
    assert!(!r.series.probabilistic);
    assert_eq!(r.rad_quotient, 7200);
    assert!(7200 <= 25u128.pow(4));
    assert_eq!(r.maroti.ok, Some(true));
    assert_eq!((r.series.x_order, r.series.k), (2, 2));
}

#[test]
fn maroti_on_rotation_wreath() {
    let limits = Limits::default();
    let a5 = alternating(5);
    let a4 = a5.point_stabilizer(4).unwrap();
    let w = wreath_top(&a5, &a4, &cyclic(4), &limits).unwrap();
    let series = radical_series(&w.w, &limits).unwrap();
    let factors = composition_factors(&w.w, &limits).unwrap();
    let m = check_maroti(&series.record(), &factors.factors);
    assert_eq!((series.record().x_order, series.k()), (4, 4));
    assert_eq!(m.ok, Some(true));
    assert_eq!(m.bound, Some(64));

    let simple = radical_series(&a5, &limits).unwrap();
    let m = check_maroti(&simple.record(), &[SimpleFactorId::identify(60)]);
    assert_eq!((m.ok, m.bound), (Some(true), Some(1)));

    let alt6 = alternating(6);
    let s = radical_series(&alt6, &limits).unwrap();
    let m = check_maroti(&s.record(), &[SimpleFactorId::identify(360)]);
    assert_eq!(m.ok, None);
    assert!(m.note.is_some());
}

#[test]
fn factor_filter_examples() {
    let limits = Limits::default();
    let l28 = build_psl2(8, 8).unwrap();
    let borel = l28.point_stabilizer(8).unwrap();
    assert_eq!(borel.order(), 56);
    let c = check_factor_filter(&l28, &borel, &limits).unwrap();
    assert!(c.passed && c.p == 3);

    let psl = build_psl3(2).unwrap();
    let line = psl.line_stabilizer(0).unwrap();
    let s3 = symmetric(3);
    let (m, k) = direct_product(&[(psl.points.clone(), line), (s3.clone(), s3)]).unwrap();
    let c = check_factor_filter(&m, &k, &limits).unwrap();
    assert!(c.passed && c.p == 7);

    let s4 = symmetric(4);
    let c = check_factor_filter(&s4, &s4.point_stabilizer(0).unwrap(), &limits).unwrap();
    assert!(c.passed && c.factors.iter().all(|f| f.is_cyclic()));
}

#[test]
fn poisoned_fixtures_are_rejected() {
    let limits = Limits::default();
    // Alt(6) has order 360, so no subgroup has index 16
    let alt6 = alternating(6);
    assert_ne!(alt6.order() % 16, 0);
    let factors = composition_factors(&alt6, &limits).unwrap();
    let c = check_factors_for_prime(2, &factors.factors, factors.probabilistic);
    assert!(!c.passed);
    assert_eq!(c.offending[0].order, 360);

    // Alt5 x PSL(3,2) mixes p = 5 with p = 7
    let a5 = alternating(5);
    let a4 = a5.point_stabilizer(4).unwrap();
    let psl = build_psl3(2).unwrap();
    let line = psl.line_stabilizer(0).unwrap();
    let (m, k) = direct_product(&[(a5, a4), (psl.points.clone(), line)]).unwrap();
    assert!(analyze_pair(&m, &k, &limits).is_err(), "index 35 is not a prime power");
    let c = check_factor_filter_for_prime(&m, &k, 5, &limits).unwrap();
    assert!(!c.passed);
    assert_eq!(c.offending.len(), 1);
    assert_eq!(c.offending[0].order, 168);
}

#[test]
fn criteria_examples() {
    let a5 = alternating(5);
    let a4 = a5.point_stabilizer(4).unwrap();
    let c7 = cyclic(7);
    let (g, hall5) = direct_product(&[(a5.clone(), a4), (c7.clone(), c7.clone())]).unwrap();
    let (_, hall7) = direct_product(&[(a5.clone(), a5.clone()), (c7.clone(), PermGroup::trivial(7))]).unwrap();
    let v = check_criteria(&g, &Criterion::TwoHall { p: 5, q: 7, hall_p: hall5, hall_q: hall7 }).unwrap();
    assert!(matches!(v, Verdict::NotApplicable(_)), "{v:?}");
    assert!(!is_solvable(&g));

    let s3 = symmetric(3);
    let v = check_criteria(
        &s3,
        &Criterion::TwoHall { p: 5, q: 7, hall_p: s3.clone(), hall_q: s3.clone() },
    )
    .unwrap();
    assert_eq!(v, Verdict::Holds);
    let a3 = alternating(3);
    let c2 = s3.point_stabilizer(2).unwrap();
    let v = check_criteria(&s3, &Criterion::WithThree { p: 2, hall_p: a3, hall_3: c2 }).unwrap();
    assert_eq!(v, Verdict::Holds);

    // PSL(2,11) with p = 5, q = 11 has no normal 5-complement, indeed no
    // subgroup of order 132 at all
    let l211 = build_psl2(11, 11).unwrap();
    let hall_pq = order_twelve_subgroup(&l211);
    let v = check_criteria(&l211, &Criterion::PNilpotent { p: 5, q: 11, complement: None, hall_pq: hall_pq.clone() }).unwrap();
    assert!(matches!(v, Verdict::NotApplicable(_)), "{v:?}");
    // a witness with the wrong order is rejected outright
    let borel = l211.point_stabilizer(11).unwrap();
    assert!(check_criteria(&l211, &Criterion::PNilpotent { p: 5, q: 11, complement: Some(borel), hall_pq }).is_err());
}

fn order_twelve_subgroup(g: &PermGroup) -> PermGroup {
    let mut rng = seeded_rng(12);
    loop {
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        if let Ok(h) = PermGroup::from_generators(g.degree(), vec![x, y]) {
            if h.order() == 12 {
                return h;
            }
        }
    }
}
