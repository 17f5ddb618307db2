use proptest::prelude::*;
use rank3_core::geometry::standard_space;
use rank3_core::higman::*;
use rank3_core::{FiniteField, ParamError, Sign, SquareClass};

#[test]
fn m3_plus_parameters() {
    let p = odd_orthogonal_params(3, Sign::Plus).unwrap();
    assert_eq!((p.total, p.k, p.l, p.lambda, p.mu), (378, 117, 260, 36, 36));
}

#[test]
fn odd_params_for_m_2_to_12() {
    for m in 2..=12u32 {
        for xi in [Sign::Plus, Sign::Minus] {
            let p = odd_orthogonal_params(m, xi).unwrap();
            let a = 3i64.pow(m);
            let x = xi.as_i64();
            assert_eq!(p.total, a * (a + x) / 2, "m={m}");
            assert!(p.counting_identity_holds(), "m={m}");
            assert_eq!(1 + p.f_s + p.f_t, p.total);
            // trace of the adjacency matrix vanishes
            assert_eq!(p.k + p.f_s * p.s + p.f_t * p.t, 0);
            // trace of its square counts ordered adjacent pairs
            let w = |x: i64| x as i128;
            assert_eq!(w(p.k) * w(p.k) + w(p.f_s) * w(p.s) * w(p.s) + w(p.f_t) * w(p.t) * w(p.t), w(p.total) * w(p.k));
            // re-derived from the generic tuple
            assert_eq!(generic_params(p.k, p.l, p.lambda, p.mu).unwrap(), p);
        }
    }
}

#[test]
fn m_below_two_is_rejected() {
    assert!(matches!(odd_orthogonal_params(1, Sign::Plus), Err(ParamError::BadM { .. })));
}

#[test]
fn generic_params_rejects_infeasible_tuples() {
    // D = 5 is not a square
    assert!(generic_params(2, 2, 0, 1).is_err());
    // Petersen graph
    let p = generic_params(3, 6, 0, 1).unwrap();
    assert_eq!((p.s, p.t, p.f_s, p.f_t), (1, -2, 5, 4));
    assert!(p.counting_identity_holds());
    // feasible spectrum but inconsistent counting identity
    let q = generic_params(2, 2, 1, 1).unwrap();
    assert!(!q.counting_identity_holds());
}

#[test]
fn eq4_thresholds() {
    for (m, t) in [(4, 41), (7, 1094), (12, 265721)] {
        assert_eq!(eq4_threshold(m), t);
        assert_eq!(t, (3i64.pow(m) + 1) / 2);
    }
}

#[test]
fn srg_parameters_measured_on_point_sets() {
    let f = FiniteField::gf3();
    for m in [2u32, 3] {
        let space = standard_space(2 * m as usize + 1, &f, SquareClass::Square).unwrap();
        for xi in [Sign::Plus, Sign::Minus] {
            let r = srg_verify(&space, xi).unwrap();
            let p = odd_orthogonal_params(m, xi).unwrap();
            assert!(r.identity_holds, "m={m} {xi:?}: {:?}", r.offending);
            assert_eq!(
                (r.points as i64, r.k, r.l, r.lambda, r.mu),
                (p.total, p.k, p.l, p.lambda, p.mu),
                "m={m} {xi:?}"
            );
            assert_eq!((r.s, r.t, r.f_s, r.f_t), (p.s, p.t, p.f_s, p.f_t));
            assert_eq!(1 + r.f_s + r.f_t, r.points as i64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn general_equation_matches_specialised_forms(
        m in 2u32..=9,
        plus in any::<bool>(),
        use_s in any::<bool>(),
        d in 0i64..20000,
        c_free in 0i64..40000,
        on_line in any::<bool>(),
    ) {
        let xi = if plus { Sign::Plus } else { Sign::Minus };
        let r = if use_s { Eigen::S } else { Eigen::T };
        // half the samples lie on the line c − 2d = ξ3^m − 1 so both outcomes occur
        let c = if on_line { 2 * d + xi.as_i64() * 3i64.pow(m) - 1 } else { c_free };
        prop_assume!(c >= 0);
        let cd = CdPair::new(c, d, xi);
        let p = odd_orthogonal_params(m, xi).unwrap();
        prop_assert_eq!(check_eq1(&p, r, cd), check_specialized(m, r, cd));
        if is_linear_case(xi, r) {
            prop_assert_eq!(check_eq1(&p, r, cd), eq2_holds(m, cd));
        } else {
            prop_assert_eq!(check_eq1(&p, r, cd), eq3_holds(m, cd));
        }
    }
}
