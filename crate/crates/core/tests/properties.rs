//! Property tests for the exact linear algebra and the trace invariants.

use std::sync::Arc;

use proptest::prelude::*;

use hstrace_core::algebra::build_algebra;
use hstrace_core::exactlin::{FieldSpec, Scalar, ScalarMatrix, Subspace};
use hstrace_core::presentation::parse_presentation;

fn qs(n: i64) -> Scalar {
    Scalar::from_integer(n, &FieldSpec::Rationals)
}

fn any_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(5)),
    ]
}

fn any_matrix() -> impl Strategy<Value = ScalarMatrix> {
    (any_field(), 1usize..=4, 1usize..=4).prop_flat_map(|(field, r, c)| {
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |entries| {
            ScalarMatrix::from_fn(&field, r, c, |i, j| {
                Scalar::from_integer(entries[i * c + j], &field)
            })
        })
    })
}

fn matrix_strategy(field: FieldSpec) -> impl Strategy<Value = ScalarMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(move |(r, c)| {
        let field = field.clone();
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |entries| {
            ScalarMatrix::from_fn(&field, r, c, |i, j| {
                Scalar::from_integer(entries[i * c + j], &field)
            })
        })
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_nullity_and_kernel_vectors(m in matrix_strategy(FieldSpec::Rationals)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul(v).is_zero());
        }
    }

    #[test]
    fn solve_returns_exact_solutions(
        m in matrix_strategy(FieldSpec::Rationals),
        xs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        // Build a consistent right-hand side and check m·x = rhs exactly.
        let x0 = ScalarMatrix::from_fn(&FieldSpec::Rationals, m.cols(), 1, |i, _| qs(xs[i % xs.len()]));
        let rhs = m.mul(&x0);
        let x = m.solve(&rhs).unwrap().expect("constructed system is consistent");
        prop_assert_eq!(m.mul(&x), rhs);
    }

    #[test]
    fn solve_detects_inconsistency_or_solves(
        m in matrix_strategy(FieldSpec::Prime(5)),
        rs in proptest::collection::vec(0i64..5, 4),
    ) {
        let rhs = ScalarMatrix::from_fn(&FieldSpec::Prime(5), m.rows(), 1, |i, _| {
            Scalar::from_integer(rs[i % rs.len()], &FieldSpec::Prime(5))
        });
        if let Some(x) = m.solve(&rhs).unwrap() {
            prop_assert_eq!(m.mul(&x), rhs);
        } else {
            // Inconsistent: the rank must grow when rhs is adjoined.
            prop_assert!(m.hstack(&rhs).rank() > m.rank());
        }
    }

    #[test]
    fn subspace_membership_is_exact(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..4),
        coeffs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let field = FieldSpec::Rationals;
        let vecs: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&n| qs(n)).collect()).collect();
        let s = Subspace::from_vectors(&field, 4, vecs.iter().map(|v| v.as_slice()));
        // Any linear combination of the generators is contained.
        let mut combo = vec![qs(0); 4];
        for (c, v) in coeffs.iter().zip(&vecs) {
            for k in 0..4 {
                combo[k] = &combo[k] + &(&qs(*c) * &v[k]);
            }
        }
        prop_assert!(s.contains(&combo));
        // The canonical representative of a contained vector is zero.
        prop_assert!(s.reduce(&combo).iter().all(|x| x.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hh0_class_is_symmetric_in_products(
        xs in proptest::collection::vec(-3i64..=3, 9),
        ys in proptest::collection::vec(-3i64..=3, 9),
    ) {
        for src in [
            "field Q; vertices 1 2; arrows a: 1 -> 2;",
            "field Q; vertices 1; arrows x: 1 -> 1; relations x*x;",
            "field Q; vertices 1 2 3; arrows a: 1 -> 2; b: 2 -> 3; relations a*b;",
        ] {
            let alg = Arc::new(build_algebra(&parse_presentation(src).unwrap()).unwrap());
            let x: Vec<Scalar> = (0..alg.dim()).map(|i| qs(xs[i % xs.len()])).collect();
            let y: Vec<Scalar> = (0..alg.dim()).map(|i| qs(ys[i % ys.len()])).collect();
            let xy = alg.hh0_class(&alg.mul_elems(&x, &y));
            let yx = alg.hh0_class(&alg.mul_elems(&y, &x));
            prop_assert_eq!(xy, yx);
        }
    }
}
