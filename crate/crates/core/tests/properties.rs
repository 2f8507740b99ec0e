mod common;

use common::t;
use num_traits::Zero;
use principal_basis::invariants::{project_to_h, D_at};
use principal_basis::linalg::{q, q_frac, CartanVec, Q};
use principal_basis::principal::{generators_for, gram_schmidt, primitive_normalize, BasisOptions, Route};
use principal_basis::rootsys::{build_root_system, RootSystem};
use proptest::prelude::*;

const TYPES: [&str; 10] = ["A2", "A3", "B3", "C3", "D4", "D5", "G2", "F4", "E6", "B2"];

fn point(dim: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((-9i64..10, 1i64..5), dim)
        .prop_map(|v| v.into_iter().map(|(n, d)| q_frac(n, d)).collect())
}

fn case() -> impl Strategy<Value = (usize, Vec<Q>, usize)> {
    (0..TYPES.len()).prop_flat_map(|i| {
        let lt = t(TYPES[i]);
        (Just(i), point(lt.ambient_dim()), 0..lt.rank())
    })
}

fn systems() -> Vec<(RootSystem, Vec<principal_basis::invariants::InvariantSpec>)> {
    TYPES
        .iter()
        .map(|s| {
            let rs = build_root_system(t(s));
            let mut specs = generators_for(&rs, &BasisOptions::default()).unwrap().specs().to_vec();
            if rs.rank() <= 3 {
                specs.extend(generators_for(&rs, &BasisOptions::with_route(Route::Orbit)).unwrap().specs().to_vec());
            }
            (rs, specs)
        })
        .collect()
}

thread_local! {
    static SYSTEMS: Vec<(RootSystem, Vec<principal_basis::invariants::InvariantSpec>)> = systems();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_are_weyl_invariant((i, x, r) in case()) {
        SYSTEMS.with(|sys| {
            let (rs, specs) = &sys[i];
            let x = CartanVec::new(x);
            let sx = rs.reflect_cartan(r, &x);
            for spec in specs {
                prop_assert_eq!(spec.evaluate(&sx), spec.evaluate(&x), "{}", spec.label());
            }
            Ok(())
        })?;
    }

    #[test]
    fn differential_is_equivariant((i, x, r) in case()) {
        SYSTEMS.with(|sys| {
            let (rs, specs) = &sys[i];
            let x = CartanVec::new(x);
            let sx = rs.reflect_cartan(r, &x);
            for spec in specs {
                let lhs = D_at(spec, &sx, rs).unwrap();
                let rhs = rs.reflect_cartan(r, &D_at(spec, &x, rs).unwrap());
                prop_assert_eq!(lhs, rhs, "{}", spec.label());
            }
            Ok(())
        })?;
    }

    #[test]
    fn invariants_are_homogeneous((i, x, _r) in case(), num in -5i64..6, den in 1i64..4) {
        SYSTEMS.with(|sys| {
            let (_, specs) = &sys[i];
            let s = q_frac(num, den);
            let x = CartanVec::new(x);
            let sx = x.scale(&s);
            for spec in specs {
                let expected = spec.evaluate(&x) * num_traits::pow(s.clone(), spec.degree() as usize);
                prop_assert_eq!(spec.evaluate(&sx), expected);
            }
            Ok(())
        })?;
    }

    #[test]
    fn orbit_sums_match_their_expansion((i, x, _r) in case()) {
        SYSTEMS.with(|sys| {
            let (rs, specs) = &sys[i];
            if rs.rank() <= 3 {
                for spec in specs {
                    prop_assert_eq!(spec.to_polynomial().evaluate(&x), spec.evaluate(&CartanVec::new(x.clone())));
                }
            }
            Ok(())
        })?;
    }

    #[test]
    fn differential_has_no_center_component((i, x, _r) in case()) {
        SYSTEMS.with(|sys| {
            let (rs, specs) = &sys[i];
            let x = CartanVec::new(x);
            for spec in specs {
                let d = D_at(spec, &x, rs).unwrap();
                prop_assert_eq!(project_to_h(&d, rs.lie_type()), d);
            }
            Ok(())
        })?;
    }

    #[test]
    fn gram_schmidt_output_is_orthogonal(rows in proptest::collection::vec(proptest::collection::vec(-6i64..7, 4), 4)) {
        let rs = build_root_system(t("B4"));
        let vs: Vec<CartanVec> = rows.iter().map(|r| CartanVec::from_ints(r)).collect();
        if let Ok((out, report)) = gram_schmidt(&vs, rs.form()) {
            for a in 0..out.len() {
                prop_assert!(!report.pivot_norms[a].is_zero());
                for b in 0..a {
                    prop_assert!(rs.form().cartan(&out[a], &out[b]).is_zero());
                }
            }
        }
    }

    #[test]
    fn primitive_normalization_ignores_scale(v in proptest::collection::vec(-20i64..21, 1..6), num in 1i64..9, den in 1i64..9, neg in any::<bool>()) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let c = if neg { -q_frac(num, den) } else { q_frac(num, den) };
        let a: Vec<Q> = v.iter().map(|&x| q(x)).collect();
        let b: Vec<Q> = a.iter().map(|x| x * &c).collect();
        prop_assert_eq!(primitive_normalize(&a).unwrap(), primitive_normalize(&b).unwrap());
    }
}
