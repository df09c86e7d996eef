mod common;

use common::suites::*;

use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use prymcheck_core::bundle::Genus2Curve;
use prymcheck_core::local::{real_points_exist, verify_witness, Solvability};
use prymcheck_core::QPoly;

fn eval_f64(f: &QPoly, t: f64) -> f64 {
    f.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * t + c.to_integer().to_f64().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 30, ..ProptestConfig::default() })]

    #[test]
    fn padic_search_matches_brute_force(input in padic_strategy()) {
        padic_check(input)?;
    }

    #[test]
    fn real_points_match_sampling(curve in random_sextic()) {
        let verdict = real_points_exist(&curve).unwrap();
        let sampled = (-5000..=5000).any(|i| eval_f64(&curve.f, i as f64 / 100.0) >= 0.0);
        if sampled {
            prop_assert!(matches!(verdict.verdict, Solvability::Solvable(_)));
        }
        match verdict.verdict {
            Solvability::Solvable(_) => prop_assert!(verify_witness(&curve, &verdict)),
            _ => prop_assert!(!sampled && curve.f.lead() < num_rational::BigRational::zero()),
        }
    }
}

#[test]
fn oracle_examples() {
    // y² = −(t⁶ + 1) has no real points
    let neg = QPoly::from_i64s(&[-1, 0, 0, 0, 0, 0, -1]);
    assert_eq!(
        real_points_exist(&Genus2Curve::new(neg, "neg").unwrap())
            .unwrap()
            .verdict,
        Solvability::Insolvable
    );
    let pos = QPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]);
    assert_eq!(residue_oracle(&pos, 3, 4), Some(true));
    assert_eq!(legendre(2, 3), -1);
}
