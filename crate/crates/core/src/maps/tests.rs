use super::*;
use crate::classifier::table1_row;
use num_traits::Signed;

fn q(p: i64, d: i64) -> QOmega {
    qw(p, d)
}

fn p(c: &[(i64, i64)]) -> Poly<QOmega> {
    Poly::new(c.iter().map(|&(a, b)| q(a, b)).collect())
}

fn grid() -> Vec<f64> {
    (0..20).map(|i| 0.05 + 0.45 * i as f64 / 19.0 + 1e-3).collect()
}

fn quoted() -> Vec<(&'static str, MapFn)> {
    let s = Poly::<QOmega>::x();
    let one = Poly::<QOmega>::one();
    let a = QOmega::new(rat(3, 1), rat(6, 1));
    vec![
        ("theta1b", RatFn::from_poly(p(&[(-1, 1), (2, 1)]).pow(2))),
        (
            "theta2a",
            RatFn::new(
                s.mul(&p(&[(-9, 1), (8, 1)]).pow(2)),
                p(&[(27, 1), (-27, 1)]),
            ),
        ),
        (
            "theta2b",
            RatFn::new(
                p(&[(8, 1), (-36, 1), (27, 1)]).pow(2),
                p(&[(64, 1), (-64, 1)]),
            ),
        ),
        (
            "theta2c",
            RatFn::new(p(&[(-2, 1), (1, 1)]).pow(2), p(&[(4, 1), (-4, 1)])),
        ),
        (
            "theta3b-cubic",
            RatFn::new(
                Poly::new(vec![QOmega::omega(), QOmega::one()]).pow(3),
                Poly::constant(a).mul(&s).mul(&s.sub(&one)),
            ),
        ),
    ]
}

#[test]
fn generated_catalog_matches_quoted_forms() {
    let maps = builtin_maps();
    for (name, want) in quoted() {
        let m = maps.iter().find(|m| m.name() == name).unwrap();
        assert_eq!(m.theta(), &want, "{name}: {m}");
    }
    let degs: Vec<usize> = maps.iter().map(|m| m.degree()).collect();
    assert_eq!(degs, vec![2, 3, 4, 2, 3, 6, 6]);
}

#[test]
fn mobius_group() {
    let x = RatFn::<QOmega>::x();
    for m in Mobius::ALL {
        assert_eq!(m.ratfn().compose(&m.inverse().ratfn()), x);
        let images: Vec<usize> = (0..3).map(|v| m.vertex_image(v).unwrap()).collect();
        let mut sorted = images.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
        for n in Mobius::ALL {
            let c = m.ratfn().compose(&n.ratfn());
            assert!(Mobius::ALL.iter().any(|o| o.ratfn() == c));
        }
    }
}

#[test]
fn catalog_values() {
    let m = |n| builtin_map(n).unwrap();
    let c = |x: f64| Complex64::new(x, 0.0);
    assert_eq!(m("theta1b").theta().eval(&q(1, 2)), Some(q(0, 1)));
    assert_eq!(apply(&m("theta1b"), c(0.0)).unwrap(), c(1.0));
    assert_eq!(m("theta2c").theta().eval(&q(0, 1)), Some(q(1, 1)));
    let t2a = m("theta2a");
    assert_eq!(t2a.theta().eval(&q(9, 8)), Some(q(0, 1)));
    assert_eq!(t2a.numerator().root_multiplicity(&q(9, 8)), 2);
    assert_eq!(t2a.theta().deriv().eval(&q(9, 8)), Some(q(0, 1)));
    for i in 1..20 {
        let s = c(i as f64 / 20.0);
        assert!(apply(&m("theta3b-cubic"), s).unwrap().norm().is_finite());
    }
    let inner = apply(&m("theta1b"), c(0.3)).unwrap();
    let want = apply(&m("theta2a"), inner).unwrap();
    let got = apply(&m("theta3a"), c(0.3)).unwrap();
    assert!((got - want).norm() < 1e-13 * want.norm());
    assert_eq!(
        m("theta3a").theta().eval(&q(3, 10)),
        m("theta1b")
            .theta()
            .eval(&q(3, 10))
            .and_then(|v| m("theta2a").theta().eval(&v))
    );
    assert!(matches!(apply(&t2a, c(1.0)), Err(MapsError::PoleOfMap(_))));
    assert!(matches!(builtin_map("theta9"), Err(MapsError::UnknownMap(_))));
}

#[test]
fn degree_additivity() {
    let m = |n| builtin_map(n).unwrap();
    assert_eq!(m("theta3a").degree(), m("theta2a").degree() * m("theta1b").degree());
    assert_eq!(
        m("theta3b").degree(),
        m("theta1b").degree() * m("theta3b-cubic").degree()
    );
}

#[test]
fn differential_relation_catalog() {
    for m in builtin_maps() {
        let src = table1_row(m.source_row()).unwrap();
        let tgt = table1_row(m.target_row()).unwrap();
        let rep = verify_differential_relation(&m, &src, &tgt, &grid()).unwrap();
        assert!(rep.checks_passed, "{rep:?}");
        assert!(rep.max_defect <= 1e-10, "{rep:?}");
    }
}

#[test]
fn epsilon_theta1b() {
    let m = builtin_map("theta1b").unwrap();
    let src = table1_row("1(b)").unwrap();
    let tgt = table1_row("1(a)").unwrap();
    let (n, e) = epsilon_power_exact(&m, &src, &tgt).unwrap();
    let rep = verify_differential_relation(&m, &src, &tgt, &grid()).unwrap();
    let eps = Complex64::new(rep.epsilon_re, rep.epsilon_im).norm();
    assert!((eps - 4f64.powf(1.0 / 3.0)).abs() < 1e-12, "{eps}");
    assert_eq!(n, 6);
    assert_eq!(e.as_rational().unwrap().abs(), rat(16, 1));
}

#[test]
fn differential_relation_controls() {
    let src = table1_row("1(b)").unwrap();
    let tgt = table1_row("1(a)").unwrap();
    let wrong = RationalMap::new(
        "cube",
        RatFn::from_poly(p(&[(-1, 1), (2, 1)]).pow(3)),
        "1(b)",
        "1(a)",
    );
    let rep = verify_differential_relation(&wrong, &src, &tgt, &grid()).unwrap();
    assert!(!rep.checks_passed);
    assert!(rep.max_defect > 1e-2, "{rep:?}");
    assert!(rep.epsilon_power.is_none());

    let m = builtin_map("theta1b").unwrap();
    assert_eq!(
        verify_differential_relation(&m, &src, &tgt, &[0.2, 0.5]),
        Err(MapsError::GridHitsPole(0.5))
    );
}

#[test]
fn series_check_quoted_scales() {
    let rep = verify_map_on_schwarz(&builtin_map("theta1b").unwrap(), 7, 8).unwrap();
    assert!(rep.checks_passed, "{rep:?}");
    assert_eq!(rep.c, q(4, 1));
    assert!((rep.epsilon().powi(3) - Complex64::new(4.0, 0.0)).norm() < 1e-9);

    let rep = verify_map_on_schwarz(&builtin_map("theta2c").unwrap(), 7, 8).unwrap();
    assert!(rep.checks_passed, "{rep:?}");
    assert_eq!(rep.c, q(-1, 4));
    assert!((rep.epsilon().powi(3) - Complex64::new(-0.25, 0.0)).norm() < 1e-9);
}

#[test]
fn series_check_identity() {
    let rep = verify_map_on_schwarz(&identity_map("1(a)"), 7, 8).unwrap();
    assert!(rep.checks_passed);
    assert_eq!(rep.max_defect, 0.0);
    assert_eq!(rep.c, q(1, 1));
    assert_eq!(rep.epsilon(), Complex64::new(1.0, 0.0));
}

#[test]
fn series_check_detects_a_wrong_map() {
    // right ramification at 0, wrong map
    let m = RationalMap::new(
        "perturbed",
        RatFn::from_poly(p(&[(-1, 1), (2, 1)]).pow(2).add(&p(&[(0, 1), (0, 1), (0, 1), (1, 1)]))),
        "1(b)",
        "1(a)",
    );
    let rep = verify_map_on_schwarz(&m, 7, 8).unwrap();
    assert!(!rep.checks_passed);
    assert!(rep.max_defect > 1e-3);
}

#[test]
fn ramification_catalog() {
    for k in [7, 8, 12] {
        for m in builtin_maps() {
            let rep = check_ramification(&m, k).unwrap();
            assert!(rep.checks_passed, "{rep:?}");
        }
    }
    let wrong = RationalMap::new(
        "cube",
        RatFn::from_poly(p(&[(-1, 1), (2, 1)]).pow(3)),
        "1(b)",
        "1(a)",
    );
    assert!(!check_ramification(&wrong, 7).unwrap().checks_passed);
}

#[test]
fn full_reports_and_consistency() {
    for m in builtin_maps() {
        let rep = verify_map(&m, 7, &grid(), 8).unwrap();
        assert!(rep.checks_passed, "{} {:?}", m.name(), rep.notes);
        assert!(rep.series.is_some(), "{}: {:?}", m.name(), rep.notes);
        let json = serde_json::to_value(&rep).unwrap();
        // sorted: key order depends on whether serde_json's preserve_order is unified in
        let mut keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec!["checks_passed", "epsilon_im", "epsilon_re", "k", "map", "max_defect"]
        );
    }
}

#[test]
fn scale_epsilon_is_finite() {
    for m in builtin_maps() {
        let e = m.scale_epsilon().unwrap();
        assert!(e.norm().is_finite() && e.norm() > 0.0, "{}", m.name());
    }
}
