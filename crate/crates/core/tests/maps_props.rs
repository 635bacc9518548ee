use chazylab::algebra::{rat, QOmega};
use chazylab::classifier::table1_row;
use chazylab::maps::{apply, builtin_map, builtin_maps, RationalMap};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// εᴺ with N = 6 (every weight in the table has denominator dividing 6).
fn eps6(m: &RationalMap, s: Complex64) -> Complex64 {
    let src = table1_row(m.source_row()).unwrap();
    let tgt = table1_row(m.target_row()).unwrap();
    let six = |q: &BigRational, sign: i32| {
        sign * (q * BigRational::from_integer(6.into()) - BigRational::from_integer(6.into()))
            .to_integer()
            .to_i32()
            .unwrap()
    };
    let th = apply(m, s).unwrap();
    let d1 = m.theta().deriv().eval_complex(s);
    th.powi(six(&tgt.weights.alpha1, 1))
        * (th - 1.0).powi(six(&tgt.weights.beta1, 1))
        * d1.powi(6)
        * s.powi(six(&src.weights.alpha1, -1))
        * (s - 1.0).powi(six(&src.weights.beta1, -1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compositions_agree_exactly(p in -40i64..40, q in 1i64..40) {
        let s = QOmega::rational(rat(p, q));
        let t1b = builtin_map("theta1b").unwrap();
        let t2a = builtin_map("theta2a").unwrap();
        let nested = t1b.theta().eval(&s).and_then(|v| t2a.theta().eval(&v));
        prop_assert_eq!(builtin_map("theta3a").unwrap().theta().eval(&s), nested);
        let cubic = builtin_map("theta3b-cubic").unwrap();
        let nested = cubic.theta().eval(&s).and_then(|v| t1b.theta().eval(&v));
        prop_assert_eq!(builtin_map("theta3b").unwrap().theta().eval(&s), nested);
    }

    #[test]
    fn epsilon_power_constant_in_the_plane(re in -1.5f64..2.5, im in -1.5f64..1.5) {
        let s = Complex64::new(re, im);
        prop_assume!(s.norm() > 0.05 && (s - 1.0).norm() > 0.05);
        for m in builtin_maps() {
            prop_assume!(m.denominator().eval_complex(s).norm() > 1e-3);
            prop_assume!(m.theta().deriv().eval_complex(s).norm() > 1e-3);
            let v = eps6(&m, s);
            let v0 = eps6(&m, Complex64::new(0.2, 0.0));
            prop_assert!((v / v0 - 1.0).norm() < 1e-9, "{} at {}: {} vs {}", m.name(), s, v, v0);
        }
    }
}
