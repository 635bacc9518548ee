use chazylab::classifier::{
    abc_from_params, enumerate, eval_u, k_from_j, residues, residues_from_params, table1,
    TriangleParams, WeightParams, PERMUTATIONS,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn unit_rational() -> impl Strategy<Value = BigRational> {
    (1i64..40).prop_flat_map(|d| (0..=d).prop_map(move |n| r(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rows_solve_u_system(row in 0usize..12, k in 7i64..=100) {
        let row = &table1()[row];
        let t = row.triangle_at(k).unwrap();
        let j = row.j_at(k).unwrap();
        prop_assert!(eval_u(&t, &row.weights, &j).iter().all(|u| u.is_zero()));
        prop_assert_eq!(r(108, 1) * row.k_at(k).unwrap() + &j, r(12, 1));
        prop_assert_eq!(k_from_j(&j), row.k_at(k).unwrap());
    }

    #[test]
    fn permutation_closure(row in 0usize..12, k in 7i64..=100, p in 0usize..6) {
        let row = &table1()[row];
        let perm = PERMUTATIONS[p];
        let t = row.triangle_at(k).unwrap().permuted(perm);
        let w = row.weights.permuted(perm);
        let j = row.j_at(k).unwrap();
        prop_assert!(t.is_admissible());
        prop_assert!(eval_u(&t, &w, &j).iter().all(|u| u.is_zero()));
        let moved = row.permuted(perm);
        prop_assert_eq!(moved.triangle_at(k).unwrap(), t);
        prop_assert_eq!(residues(&moved, k).unwrap(), residues_from_params(&moved.triangle_at(k).unwrap(), &w).unwrap());
    }

    #[test]
    fn pole_structure(row in 0usize..12, k in 7i64..=100) {
        let row = &table1()[row];
        let t = row.triangle_at(k).unwrap();
        let res = residues(row, k).unwrap();
        for (i, (p, w)) in t.as_array().into_iter().zip(row.weights.as_array()).enumerate() {
            prop_assert_eq!(res[i].is_zero(), p == w);
        }
        prop_assert!(res.iter().any(|v| !v.is_zero()));
    }

    // With γ = 0: u₁ + … + u₅ = J·D² − 12γ₁²·D identically in J.
    #[test]
    fn d_identity(a1 in unit_rational(), b1 in unit_rational(),
                  a in unit_rational(), b in unit_rational(), j in -50i64..50) {
        prop_assume!(&a1 + &b1 <= r(1, 1));
        let t = TriangleParams::new(a, b, r(0, 1));
        let w = WeightParams::new(a1, b1).unwrap();
        let j = r(j, 3);
        let d = abc_from_params(&t, &w).d;
        let sum = eval_u(&t, &w, &j).into_iter().fold(r(0, 1), |acc, u| acc + u);
        let g1 = w.gamma1.clone();
        prop_assert_eq!(sum, &j * &d * &d - r(12, 1) * &g1 * &g1 * &d);
    }
}

#[test]
fn enumeration_stable_under_bound() {
    let lo = enumerate(7, 8, 32);
    let hi = enumerate(7, 8, 40);
    assert!(lo.unmatched.is_empty() && hi.unmatched.is_empty());
    assert_eq!(lo.labels(), hi.labels());
    for label in lo.labels() {
        let (a, b) = (lo.ks(label), hi.ks(label));
        assert!(a.iter().all(|k| b.contains(k)), "{label}: {a:?} vs {b:?}");
    }
    assert!(lo.instances.iter().all(|i| hi.instances.contains(i)));
}
