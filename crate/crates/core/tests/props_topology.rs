mod common;

use common::*;
use nalgebra::DMatrix;
use num_traits::Zero;
use proptest::prelude::*;
use prymcheck_core::bundle::pgl2_act;
use prymcheck_core::quadform::Signature;
use prymcheck_core::scalar::rational_to_f64;
use prymcheck_core::topology::{
    arc_contains, classify_real_locus, fiber_signature, Arc, ParamPoint, Sample, SignatureProfile,
};
use prymcheck_core::{RealAlgebraic, Sign};

fn numeric_fiber_signature(t: &prymcheck_core::bundle::FormTriple, x: f64) -> Signature {
    let [m1, m2, m3] = t.matrices();
    let mut m = DMatrix::from_fn(4, 4, |i, j| {
        if i == 3 || j == 3 {
            return if i == j { -1.0 } else { 0.0 };
        }
        let g = |s: &prymcheck_core::quadform::SymQuadraticForm<prymcheck_core::Rational>| {
            rational_to_f64(s.matrix().get(i, j))
        };
        x * x * g(&m1) + 2.0 * x * g(&m2) + g(&m3)
    });
    let scale = m.abs().max().max(1.0);
    m /= scale;
    let ev = m.symmetric_eigenvalues();
    Signature::new(
        ev.iter().filter(|&&e| e > 1e-7).count(),
        ev.iter().filter(|&&e| e < -1e-7).count(),
    )
}

/// Segment of the profile containing the finite point `x`, located in floating point.
fn segment_at(profile: &SignatureProfile, x: f64) -> Option<Signature> {
    let roots: Vec<f64> = profile.roots.iter().map(|r| r.to_f64()).collect();
    if roots.iter().any(|r| (r - x).abs() < 1e-4 * (1.0 + x.abs())) {
        return None;
    }
    let finite: Vec<f64> = roots.iter().copied().filter(|r| r.is_finite()).collect();
    if finite.is_empty() {
        return Some(profile.segments[0].signature);
    }
    let k = finite.iter().filter(|&&r| r < x).count();
    // segments[i] starts at roots[i]; points below the smallest root sit on the last segment
    let idx = if k == 0 {
        profile.segments.len() - 1
    } else {
        k - 1
    };
    Some(profile.segments[idx].signature)
}

fn is_root(
    sextic: &prymcheck_core::quadform::BinaryForm<prymcheck_core::Rational>,
    p: &ParamPoint,
) -> bool {
    match p {
        ParamPoint::Infinity => sextic.multiplicity_at_infinity() > 0,
        ParamPoint::Finite(x) => x.sign_of(&sextic.poly) == Sign::Zero,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn profile_matches_floating_point_signatures(t in triple(7), xs in proptest::collection::vec(-4000i64..=4000, 8)) {
        let Ok(report) = classify_real_locus(&t) else { return Ok(()); };
        for x in xs {
            let x = x as f64 / 500.0;
            if let Some(sig) = segment_at(&report.profile, x) {
                prop_assert_eq!(sig, numeric_fiber_signature(&t, x), "at t = {}", x);
            }
        }
    }

    #[test]
    fn resampling_segments_gives_the_same_signature(t in triple(7)) {
        let Ok(report) = classify_real_locus(&t) else { return Ok(()); };
        for seg in &report.profile.segments {
            let other = match (&seg.segment.start, &seg.segment.sample) {
                (Some(ParamPoint::Finite(a)), s) if !s.t1.is_zero() => {
                    let mid = RealAlgebraic::rational(&s.t0 / &s.t1);
                    if a < &mid { Sample::affine(a.rational_between(&mid)) } else { continue }
                }
                _ => continue,
            };
            prop_assert_eq!(fiber_signature(&t, &other).unwrap(), seg.signature);
        }
    }

    #[test]
    fn line_intervals_lie_inside_point_intervals(t in triple(7)) {
        let Ok(report) = classify_real_locus(&t) else { return Ok(()); };
        for line in &report.real_line_intervals {
            let inside = match line {
                Arc::Circle => report.real_point_intervals == vec![Arc::Circle],
                Arc::Closed { start, end } => report
                    .real_point_intervals
                    .iter()
                    .any(|p| arc_contains(p, start) && arc_contains(p, end)),
            };
            prop_assert!(inside);
        }
        for seg in &report.profile.segments {
            if seg.signature == Signature::new(2, 2) {
                prop_assert!(seg.signature.is_indefinite());
            }
        }
        prop_assert_eq!(report.component_count, report.real_point_intervals.len());
    }

    #[test]
    fn interval_endpoints_are_sextic_roots(t in triple(7)) {
        let Ok(report) = classify_real_locus(&t) else { return Ok(()); };
        let arcs = report.real_point_intervals.iter().chain(&report.real_line_intervals);
        for arc in arcs {
            if let Arc::Closed { start, end } = arc {
                prop_assert!(is_root(&report.profile.sextic, start));
                prop_assert!(is_root(&report.profile.sextic, end));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn classification_is_pgl2_invariant(t in triple(5), m in gl2(2)) {
        let Ok(before) = classify_real_locus(&t) else { return Ok(()); };
        let after = classify_real_locus(&pgl2_act(m, &t).unwrap()).unwrap();
        prop_assert_eq!(before.classification, after.classification);
        prop_assert_eq!(before.component_count, after.component_count);
        prop_assert_eq!(before.pi1_surjective, after.pi1_surjective);
        prop_assert_eq!(before.real_line_intervals.len(), after.real_line_intervals.len());
        let mut a: Vec<Signature> = before.profile.segments.iter().map(|s| s.signature).collect();
        let mut b: Vec<Signature> = after.profile.segments.iter().map(|s| s.signature).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn fixture_profiles_are_resampled_consistently() {
    for t in [disconnected(), sphere(), diagonal()] {
        let report = classify_real_locus(&t).unwrap();
        for x in -40..=40 {
            let x = x as f64 / 8.0;
            if let Some(sig) = segment_at(&report.profile, x) {
                assert_eq!(sig, numeric_fiber_signature(&t, x), "{} at {}", t.name, x);
            }
        }
    }
}
