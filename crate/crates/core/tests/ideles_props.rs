use hnp_core::ideles::{
    boundary_punctured_surface, class_quotient, diagonal_map, local_boundary, meridian_subgroup, principal_lattice,
    project_idele, IdeleVector, SurfaceClass,
};
use hnp_core::links::{BraidWord, LinkUniverse, Sublink};
use hnp_core::zlattice::AbelianInvariants;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn universe() -> impl Strategy<Value = LinkUniverse> {
    (1usize..=4).prop_flat_map(|k| {
        let letters = if k == 1 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec((1..k as i32, any::<bool>()), 0..8)
                .prop_map(|ls| ls.into_iter().map(|(g, s)| if s { g } else { -g }).collect())
                .boxed()
        };
        letters.prop_map(move |w| LinkUniverse::from_braid(&BraidWord::new(k, w).unwrap()))
    })
}

fn class_on(u: &LinkUniverse, coeffs: &[i64]) -> SurfaceClass {
    SurfaceClass::from_pairs((0..u.len()).map(|k| (k, BigInt::from(coeffs[k % coeffs.len()]))))
}

fn mask_sublink(u: &LinkUniverse, mask: u32) -> Sublink {
    (0..u.len()).filter(|&i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn diagonal_map_is_linear(
        u in universe(),
        x in prop::collection::vec(-5i64..=5, 1..6),
        y in prop::collection::vec(-5i64..=5, 1..6),
        a in -3i64..=3,
    ) {
        let (s, t) = (class_on(&u, &x), class_on(&u, &y));
        let combo = SurfaceClass::from_pairs(
            (0..u.len()).map(|k| (k, BigInt::from(a) * s.coefficient(k) + t.coefficient(k))),
        );
        let lhs = diagonal_map(&u, &combo).unwrap();
        let rhs = &diagonal_map(&u, &s).unwrap().scaled(&BigInt::from(a)) + &diagonal_map(&u, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_boundary_agrees_with_projected_diagonal(u in universe(), mask in 0u32..16, x in prop::collection::vec(-4i64..=4, 1..5)) {
        let l = mask_sublink(&u, mask);
        let full = u.full_sublink();
        let s = SurfaceClass::from_pairs(l.iter().map(|&k| (k, BigInt::from(x[k % x.len()]))));
        let via_diagonal = project_idele(&diagonal_map(&u, &s).unwrap(), &full, &l).unwrap();
        prop_assert_eq!(local_boundary(&u, &s, &l).unwrap(), via_diagonal);
        prop_assert_eq!(local_boundary(&u, &s, &full).unwrap(), diagonal_map(&u, &s).unwrap());
    }

    #[test]
    fn punctured_surface_is_diagonal_restricted(u in universe(), mask in 1u32..16) {
        let l = mask_sublink(&u, mask);
        for &k in &l {
            let v = boundary_punctured_surface(&u, k, &l).unwrap();
            let d = diagonal_map(&u, &SurfaceClass::seifert(k)).unwrap();
            for i in 0..u.len() {
                let inside = l.contains(&i);
                prop_assert_eq!(v.meridian(i), &if inside { d.meridian(i).clone() } else { BigInt::zero() });
                prop_assert_eq!(v.longitude(i), &if inside { d.longitude(i).clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn meridian_subgroup_by_membership(u in universe(), mask in 0u32..16) {
        let excluded = mask_sublink(&u, mask);
        let sub = meridian_subgroup(&u, &excluded).unwrap();
        let m = u.len();
        for k in 0..m {
            prop_assert_eq!(
                sub.lattice.contains(IdeleVector::meridian_unit(m, k).coords()).unwrap(),
                !excluded.contains(&k)
            );
            prop_assert!(!sub.lattice.contains(IdeleVector::longitude_unit(m, k).coords()).unwrap());
        }
        prop_assert_eq!(sub.lattice.rank(), m - excluded.len());
    }

    #[test]
    fn principal_lattice_is_a_free_summand(u in universe()) {
        let p = principal_lattice(&u);
        prop_assert_eq!(p.rank(), u.len());
        prop_assert_eq!(p.quotient_invariants(), AbelianInvariants::free(u.len()));
    }

    #[test]
    fn class_quotient_rank_matches_sublink(u in universe(), mask in 0u32..16) {
        let l = mask_sublink(&u, mask);
        prop_assert_eq!(class_quotient(&u, &l).unwrap(), AbelianInvariants::free(l.len()));
    }
}

#[test]
fn hopf_examples() {
    // Closure of σ₁² with its axis: A, K1, K2 with lk(K1, K2) = 1.
    let u = LinkUniverse::from_braid(&BraidWord::new(2, vec![1, 1]).unwrap());
    let d = diagonal_map(&u, &SurfaceClass::seifert(1)).unwrap();
    assert_eq!(d, IdeleVector::from_i64(&[-1, 0, 0, 1, -1, 0]).unwrap());
    let l = Sublink::from([1]);
    let big = Sublink::from([1, 2]);
    let s = SurfaceClass::seifert(1);
    let lifted = local_boundary(&u, &s, &big).unwrap();
    assert_eq!(project_idele(&lifted, &big, &l).unwrap(), IdeleVector::from_i64(&[0, 1]).unwrap());
}
