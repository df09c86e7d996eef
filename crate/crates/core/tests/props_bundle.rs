mod common;

use common::suites::*;
use common::*;
use proptest::prelude::*;
use prymcheck_core::bundle::{
    cover_equations, degenerate_fiber_form, discriminant_quartic, find_singular_point,
    pencil_matrix, pgl2_act, prym_polynomial, smooth_quartic_check, FormTriple, SmoothVerdict,
};
use prymcheck_core::multipoly::TernaryForm;
use prymcheck_core::prym::{verify_on_cover, DivisorCertificate};
use prymcheck_core::topology::{conic_quotient_scalar, quotient_conic};

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn degenerate_form_is_the_prym_sextic(t in triple(9)) {
        let f = prym_polynomial(&t);
        for x in -3..=3 {
            let m = pencil_matrix(&t, &q(x), &q(1));
            prop_assert_eq!(f.eval(&q(x)), -det3(&m));
        }
        prop_assert_eq!(-det3(&pencil_matrix(&t, &q(1), &q(0))), f.coeff(6));
        if let Ok(b) = degenerate_fiber_form(&t) {
            prop_assert_eq!(b.poly, f);
        } else {
            prop_assert!(f.is_zero());
        }
    }

    #[test]
    fn conic_quotient_identity_on_diagonal_triples(cs in proptest::array::uniform9(-9i64..=9)) {
        let diag = |a: i64, b: i64, c: i64| {
            TernaryForm::from_key_map([("u^2", a.to_string().as_str()), ("v^2", &b.to_string()), ("w^2", &c.to_string())]).unwrap()
        };
        let Ok(t) = FormTriple::new("d", diag(cs[0], cs[1], cs[2]), diag(cs[3], cs[4], cs[5]), diag(cs[6], cs[7], cs[8])) else {
            return Ok(());
        };
        let f = discriminant_quartic(&t);
        prop_assume!(!f.is_zero());
        let g = quotient_conic(&f).unwrap();
        let sq = |i: usize| TernaryForm::var(i) * TernaryForm::var(i);
        prop_assert_eq!(conic_quotient_scalar(&f, &g, &[sq(0), sq(1), sq(2)]), Some(q(1)));
        prop_assert_eq!(conic_quotient_scalar(&f.scale(&q(-16)), &g, &[sq(0), sq(1), sq(2)]), Some(q(-16)));
    }

    #[test]
    fn common_base_point_makes_the_quartic_singular(
        cs in proptest::collection::vec(-6i64..=6, 15),
        a in gl_n(3, 2),
    ) {
        // no w² terms: all three conics pass through (0 : 0 : 1)
        let f = |k: usize| linear([cs[k], cs[k + 1], 0]) * linear([1, 0, 0]) + linear([0, cs[k + 2], cs[k + 3]]) * linear([0, 1, 0]) + linear([0, 0, cs[k + 4]]) * linear([1, 1, 0]);
        let Ok(t) = FormTriple::new("based", f(0), f(5), f(10)) else { return Ok(()); };
        let moved = gl3_act(&a, &t);
        let quartic = discriminant_quartic(&moved);
        prop_assume!(!quartic.is_zero());
        let cert = smooth_quartic_check(&quartic, &[3, 5, 7, 11, 13]).unwrap();
        prop_assert_ne!(cert.verdict, SmoothVerdict::Smooth);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn pencil_is_covariant_under_pgl2((t, m) in covariance_strategy()) {
        let moved = pgl2_act(m.clone(), &t).unwrap();
        let [[a, b], [c, d]] = &m;
        for x in -2..=2 {
            let x = q(x);
            let direct = pencil_matrix(&moved, &x, &q(1));
            let pulled = pencil_matrix(&t, &(b * &x + a), &(d * &x + c));
            prop_assert_eq!(direct, pulled);
        }
        covariance_check((t, m))?;
    }

    #[test]
    fn smooth_verdicts_have_no_singular_point(t in triple(5)) {
        let quartic = discriminant_quartic(&t);
        prop_assume!(!quartic.is_zero());
        let cert = smooth_quartic_check(&quartic, &t.default_witness_primes()).unwrap();
        if cert.verdict == SmoothVerdict::Smooth {
            prop_assert!(find_singular_point(&quartic).is_none());
        }
    }

    #[test]
    fn certificate_points_follow_coordinate_changes(a in gl_n(3, 2), m in gl2(2)) {
        let cert = certificate();
        let base = disconnected();
        prop_assert!(verify_on_cover(&cert, &cover_equations(&base)).on_cover);
        let moved = gl3_act(&a, &pgl2_act(m.clone(), &base).unwrap());
        let ainv = inverse3(&a);
        let points = cert.points.iter().map(|p| moved_point(p, &ainv, &m)).collect();
        let moved_cert = DivisorCertificate::new(points, -1, [q(0), q(0), q(1)]).unwrap();
        prop_assert!(verify_on_cover(&moved_cert, &cover_equations(&moved)).on_cover);
        prop_assert!(!verify_on_cover(&moved_cert, &cover_equations(&diagonal())).on_cover);
    }
}
