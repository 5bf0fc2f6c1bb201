use proptest::prelude::*;

use qhyper::askey_wilson::{aw_poly, aw_poly_as_polynomial, AWParams, XPoint};
use qhyper::linalg::{
    desnanot_jacobi_residual, det_cofactor, det_condensation, det_fraction_free,
    pfaffian_expansion, pfaffian_matchings, Matrix, SkewMatrix,
};
use qhyper::Scalar;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=7).prop_map(|(p, r)| Scalar::ratio(p, r).unwrap())
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=7).prop_map(|(p, r)| Scalar::ratio(p, r).unwrap())
}

fn base() -> impl Strategy<Value = Scalar> {
    nonzero().prop_filter("q not in {0, 1, -1}", |q| !q.is_one() && !(-q).is_one())
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(rational(), n * n)
            .prop_map(move |e| Matrix::new(n, n, e).unwrap())
    })
}

fn skew(orders: &'static [usize]) -> impl Strategy<Value = SkewMatrix> {
    proptest::sample::select(orders).prop_flat_map(|n| {
        proptest::collection::vec(rational(), n * n)
            .prop_map(move |e| SkewMatrix::from_upper(n, |i, j| Ok(e[i * n + j].clone())).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_engines_agree(m in square(6)) {
        let ff = det_fraction_free(&m).unwrap();
        prop_assert_eq!(&ff, &det_condensation(&m).unwrap());
        prop_assert_eq!(&ff, &det_cofactor(&m).unwrap());
    }

    #[test]
    fn desnanot_jacobi_vanishes(m in square(6).prop_filter("order at least 2", |m| m.rows() >= 2)) {
        prop_assert!(desnanot_jacobi_residual(&m).unwrap().is_zero());
    }

    #[test]
    fn row_swap_negates(m in square(5).prop_filter("order at least 2", |m| m.rows() >= 2)) {
        let swapped = m.with_rows_swapped(0, m.rows() - 1);
        prop_assert_eq!(det_fraction_free(&swapped).unwrap(), -det_fraction_free(&m).unwrap());
    }

    #[test]
    fn transpose_keeps_det(m in square(5)) {
        prop_assert_eq!(det_fraction_free(&m.transpose()).unwrap(), det_fraction_free(&m).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_det(s in skew(&[2, 4, 6])) {
        let pf = pfaffian_matchings(&s).unwrap();
        prop_assert_eq!(&pf, &pfaffian_expansion(&s).unwrap());
        prop_assert_eq!(&pf * &pf, det_fraction_free(s.matrix()).unwrap());
    }

    #[test]
    fn odd_skew_det_vanishes(s in skew(&[1, 3, 5])) {
        prop_assert!(det_fraction_free(s.matrix()).unwrap().is_zero());
    }

    #[test]
    fn aw_symmetric_in_a_and_b(
        a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), q in base(), z in nonzero(), n in 0usize..=5,
    ) {
        let p = AWParams::new(a, b, c, d, q).unwrap();
        let x = XPoint::new(z).unwrap();
        let lhs = aw_poly(n, &p, &x);
        let rhs = aw_poly(n, &p.permuted([1, 0, 2, 3]), &x);
        prop_assume!(lhs.is_ok() && rhs.is_ok());
        prop_assert_eq!(lhs.unwrap(), rhs.unwrap());
    }

    #[test]
    fn aw_polynomial_form_agrees(
        a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), q in base(), z in nonzero(), n in 0usize..=4,
    ) {
        let p = AWParams::new(a, b, c, d, q).unwrap();
        let x = XPoint::new(z).unwrap();
        let (Ok(poly), Ok(v)) = (aw_poly_as_polynomial(n, &p), aw_poly(n, &p, &x)) else {
            return Err(TestCaseError::reject("pole"));
        };
        prop_assert_eq!(poly.eval(&x.x()), v.clone());
        prop_assert_eq!(aw_poly(n, &p, &x.inverted()).unwrap(), v);
    }
}
