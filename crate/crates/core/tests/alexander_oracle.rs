mod common;

use common::*;
use hnp_core::covers::{alexander_polynomial, branched_cover_order, resultant, Polynomial};
use hnp_core::zlattice::IntMatrix;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..=4).prop_flat_map(|s| prop::collection::vec(prop::collection::vec(-2i64..=2, s), s))
}

fn poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alexander_matches_leibniz(v in square()) {
        let m = IntMatrix::from_rows(&v).unwrap_or_else(|_| IntMatrix::zeros(0, 0));
        let expected = Polynomial::from_i64(&leibniz_alexander(&v));
        prop_assert_eq!(alexander_polynomial(&m).unwrap(), expected);
    }

    #[test]
    fn resultant_matches_euclid(f in poly(), g in poly()) {
        let ours = resultant(&Polynomial::from_i64(&f), &Polynomial::from_i64(&g));
        let theirs = euclid_resultant(&f, &g);
        prop_assert!(theirs.is_integer());
        prop_assert_eq!(ours.abs(), theirs.to_integer().abs());
    }

    #[test]
    fn cover_order_matches_oracle(v in square(), n in 2usize..=7) {
        let m = IntMatrix::from_rows(&v).unwrap_or_else(|_| IntMatrix::zeros(0, 0));
        prop_assert_eq!(branched_cover_order(&m, n).unwrap(), oracle_cover_order(&v, n));
    }
}

#[test]
fn knot_table_orders() {
    let trefoil = vec![vec![-1, 1], vec![0, -1]];
    let fig8 = vec![vec![1, 1], vec![0, -1]];
    for (v, n, order) in [(&trefoil, 2, 3), (&trefoil, 3, 4), (&trefoil, 5, 1), (&trefoil, 6, 0), (&fig8, 2, 5)] {
        let m = IntMatrix::from_rows(v).unwrap();
        assert_eq!(oracle_cover_order(v, n), BigInt::from(order));
        assert_eq!(branched_cover_order(&m, n).unwrap(), BigInt::from(order));
    }
}
