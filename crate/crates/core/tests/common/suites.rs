//! Property checks shared by the property suites and the acceptance run.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use prymcheck_core::bundle::{
    cover_equations, discriminant_quartic, mobius_preimage, pgl2_act, prym_polynomial, FormTriple,
    Genus2Curve,
};
use prymcheck_core::groebner::{projective_empty, FpPoly, Mono, PrimeFieldIdeal};
use prymcheck_core::local::{qp_points_exist, verify_witness, Solvability};
use prymcheck_core::prym::{
    parity_compare, span_rank_verdict, verify_on_cover, ComponentLabel, DivisorCertificate,
    ParityVerdict,
};
use prymcheck_core::quadform::{signature, SymQuadraticForm};
use prymcheck_core::real_algebraic::exact_real_roots;
use prymcheck_core::scalar::rational_to_f64;
use prymcheck_core::sturm::isolate_real_roots;
use prymcheck_core::{QMatrix, QPoly, Rational};

use super::*;

pub type Check<T> = fn(T) -> Result<(), TestCaseError>;

/// Runs `check` on `cases` inputs drawn from `strategy`.
pub fn run<S: Strategy>(cases: u32, strategy: S, check: Check<S::Value>) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: 10_000,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, check)
        .map_err(|e| e.to_string())
}

// Sturm counts against companion-matrix eigenvalues

/// Real roots of `f` from the companion matrix, or `None` when two eigenvalues are
/// too close to tell apart.
pub fn numeric_real_roots(f: &QPoly) -> Option<usize> {
    let cs: Vec<f64> = f.coeffs().iter().map(rational_to_f64).collect();
    let n = cs.len() - 1;
    let lead = cs[n];
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -cs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let ev = m.complex_eigenvalues();
    for i in 0..n {
        for j in 0..i {
            if (ev[i] - ev[j]).norm() <= 1e-6 {
                return None;
            }
        }
    }
    Some(
        ev.iter()
            .filter(|z| z.im.abs() < 1e-9 * (1.0 + z.re.abs()))
            .count(),
    )
}

pub fn sturm_strategy() -> impl Strategy<Value = QPoly> {
    int_poly(6, 20)
}

pub fn sturm_check(f: QPoly) -> Result<(), TestCaseError> {
    let Some(expected) = numeric_real_roots(&f) else {
        return Ok(());
    };
    let got = isolate_real_roots(&f, None).unwrap().len();
    prop_assert_eq!(got, expected);
    Ok(())
}

// signature under congruence

pub fn sym_matrix(n: usize, r: i64) -> impl Strategy<Value = SymQuadraticForm<Rational>> {
    proptest::collection::vec(-r..=r, n * (n + 1) / 2).prop_map(move |cs| {
        let mut m = QMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m.set(i, j, q(cs[k]));
                m.set(j, i, q(cs[k]));
                k += 1;
            }
        }
        SymQuadraticForm::new(m).unwrap()
    })
}

pub fn congruence_strategy() -> impl Strategy<Value = (SymQuadraticForm<Rational>, QMatrix)> {
    prop_oneof![Just(3usize), Just(4)].prop_flat_map(|n| (sym_matrix(n, 6), gl_n(n, 3)))
}

pub fn congruence_check(
    (f, a): (SymQuadraticForm<Rational>, QMatrix),
) -> Result<(), TestCaseError> {
    prop_assert_eq!(signature(&f.congruent(&a)), signature(&f));
    Ok(())
}

// PGL₂ covariance

/// `Σ fᵢ·(b·t + a)ⁱ·(d·t + c)ⁿ⁻ⁱ`.
pub fn substitute_binary(f: &QPoly, n: u32, m: &[[Rational; 2]; 2]) -> QPoly {
    let [[a, b], [c, d]] = m;
    let num = QPoly::new(vec![a.clone(), b.clone()]);
    let den = QPoly::new(vec![c.clone(), d.clone()]);
    (0..=n).fold(QPoly::zero(), |acc, i| {
        acc + (num.pow(i) * den.pow(n - i)).scale(&f.coeff(i as usize))
    })
}

pub fn covariance_strategy() -> impl Strategy<Value = (FormTriple, [[Rational; 2]; 2])> {
    (triple(6), gl2(3))
}

pub fn covariance_check((t, m): (FormTriple, [[Rational; 2]; 2])) -> Result<(), TestCaseError> {
    let moved = pgl2_act(m.clone(), &t).unwrap();
    let [[a, b], [c, d]] = &m;
    let det = a * d - b * c;
    let delta = discriminant_quartic(&t);
    let moved_delta = discriminant_quartic(&moved);
    prop_assert_eq!(&moved_delta, &delta.scale(&(&det * &det)));
    if !delta.is_zero() {
        prop_assert_eq!(delta.proportionality(&moved_delta), Some(&det * &det));
    }
    let f = prym_polynomial(&t);
    let g = prym_polynomial(&moved);
    prop_assert_eq!(&g, &substitute_binary(&f, 6, &m));
    if !g.is_zero() {
        let projective = |h: &QPoly| exact_real_roots(h).unwrap().len() + usize::from(h.deg0() < 6);
        prop_assert_eq!(projective(&g), projective(&f));
        for r in exact_real_roots(&g).unwrap() {
            if let Some(r) = r.as_rational() {
                match mobius_preimage(&m, r) {
                    Some(s) => prop_assert!(f.eval(&s).is_zero()),
                    None => prop_assert!(f.coeff(6).is_zero()),
                }
            }
        }
    }
    Ok(())
}

// flip parity against span rank

/// The base certificate with `mask` flips, moved by `A ∈ GL₃` and `m ∈ GL₂`.
pub fn synthetic(mask: u32, a: &QMatrix, m: &[[Rational; 2]; 2]) -> DivisorCertificate {
    let ainv = inverse3(a);
    let flipped = certificate().flipped(mask);
    let points = flipped
        .points
        .iter()
        .map(|p| moved_point(p, &ainv, m))
        .collect();
    DivisorCertificate::new(points, -1, [q(0), q(0), q(1)]).unwrap()
}

pub type ParityInput = (u32, u32, QMatrix, [[Rational; 2]; 2]);

pub fn parity_strategy() -> impl Strategy<Value = ParityInput> {
    (0u32..16, 0u32..16, gl_n(3, 2), gl2(2))
}

pub fn parity_check((ma, mb, a, m): ParityInput) -> Result<(), TestCaseError> {
    let ca = synthetic(ma, &a, &m);
    let cb = synthetic(mb, &a, &m);
    let moved = gl3_act(&a, &pgl2_act(m.clone(), &disconnected()).unwrap());
    let cover = cover_equations(&moved);
    prop_assert!(verify_on_cover(&ca, &cover).on_cover);
    prop_assert!(verify_on_cover(&cb, &cover).on_cover);
    let la = span_rank_verdict(&ca).unwrap().label;
    let lb = span_rank_verdict(&cb).unwrap().label;
    let expected = if ma.count_ones() % 2 == 1 {
        ComponentLabel::S1
    } else {
        ComponentLabel::S1Tilde
    };
    prop_assert_eq!(la, expected);
    let (verdict, overlap) = parity_compare(&ca, &cb).unwrap();
    prop_assert_eq!(overlap, 4 - (ma ^ mb).count_ones() as usize);
    prop_assert_eq!(verdict == ParityVerdict::SameComponent, la == lb);
    Ok(())
}

// p-adic search against brute force

pub fn random_sextic() -> impl Strategy<Value = Genus2Curve> {
    (
        proptest::collection::vec(-20i64..=20, 6),
        prop_oneof![(-20i64..=-1), (1i64..=20), Just(0)],
    )
        .prop_filter_map("degenerate", |(mut cs, lead)| {
            cs.push(lead);
            Genus2Curve::new(QPoly::from_i64s(&cs), "random").ok()
        })
}

/// `c + p·g(t)` with `deg g = 6`: solvability hinges on `c` and deeper digits.
pub fn near_constant(p: i64) -> impl Strategy<Value = Genus2Curve> {
    (
        -10i64..=10,
        proptest::collection::vec(-4i64..=4, 6),
        1i64..=4,
    )
        .prop_filter_map("degenerate", move |(c, g, lead)| {
            let mut cs: Vec<i64> = g.iter().map(|x| p * x).collect();
            cs[0] += c;
            cs.push(p * lead);
            Genus2Curve::new(QPoly::from_i64s(&cs), "near constant").ok()
        })
}

pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

/// Decides solvability over ℚ_p by brute force mod `p^k`: `t ∈ ℤ_p` and `t = 1/s`
/// with `s ∈ pℤ_p`. A class with `v_p(value) < k` has known valuation and leading
/// digit. `None` if some class is undetermined and none is a square.
pub fn residue_oracle(f: &QPoly, p: i64, k: u32) -> Option<bool> {
    let mut h: Vec<BigInt> = f.coeffs().iter().map(|c| c.to_integer()).collect();
    h.resize(7, BigInt::zero());
    let rev: Vec<BigInt> = h.iter().rev().cloned().collect();
    let pk = p.pow(k);
    let pb = BigInt::from(p);
    let mut open = false;
    for (poly, step) in [(&h, 1), (&rev, p)] {
        for x in (0..pk).step_by(step as usize) {
            let xb = BigInt::from(x);
            let value = poly
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * &xb + c);
            if value.is_zero() {
                open = true;
                continue;
            }
            let mut v = 0;
            let mut u = value;
            while u.is_multiple_of(&pb) {
                u /= &pb;
                v += 1;
            }
            if v >= k {
                open = true;
                continue;
            }
            let digit = u.mod_floor(&pb).to_i64().unwrap();
            if v % 2 == 0 && legendre(digit, p) == 1 {
                return Some(true);
            }
        }
    }
    if open {
        None
    } else {
        Some(false)
    }
}

pub fn padic_strategy() -> impl Strategy<Value = (i64, Genus2Curve)> {
    prop_oneof![Just(3i64), Just(5)]
        .prop_flat_map(|p| (Just(p), prop_oneof![random_sextic(), near_constant(p)]))
}

pub fn padic_check((p, curve): (i64, Genus2Curve)) -> Result<(), TestCaseError> {
    let verdict = qp_points_exist(&curve, p as u64, 24).unwrap();
    match residue_oracle(&curve.f, p, 6) {
        Some(true) => prop_assert!(matches!(verdict.verdict, Solvability::Solvable(_))),
        Some(false) => prop_assert_eq!(verdict.verdict.clone(), Solvability::Insolvable),
        None => {}
    }
    if matches!(verdict.verdict, Solvability::Solvable(_)) {
        prop_assert!(verify_witness(&curve, &verdict));
    }
    Ok(())
}

// projective emptiness against point search

/// Arithmetic in 𝔽_{p²} = 𝔽_p[α]/(α² − n) for a non-residue n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp2 {
    a: u64,
    b: u64,
}

const FP2_ZERO: Fp2 = Fp2 { a: 0, b: 0 };

fn non_residue(p: u64) -> u64 {
    (2..p).find(|&n| (1..p).all(|x| x * x % p != n)).unwrap()
}

fn fp2_mul(x: Fp2, y: Fp2, n: u64, p: u64) -> Fp2 {
    Fp2 {
        a: (x.a * y.a + x.b * y.b % p * n) % p,
        b: (x.a * y.b + x.b * y.a) % p,
    }
}

fn eval_fp2(f: &FpPoly, xs: &[Fp2], n: u64, p: u64) -> Fp2 {
    let mut acc = FP2_ZERO;
    for (m, c) in &f.terms {
        let mut t = Fp2 { a: *c, b: 0 };
        for (i, &x) in xs.iter().enumerate() {
            for _ in 0..m[i] {
                t = fp2_mul(t, x, n, p);
            }
        }
        acc = Fp2 {
            a: (acc.a + t.a) % p,
            b: (acc.b + t.b) % p,
        };
    }
    acc
}

/// Searches projective points over 𝔽_{p²}, normalised so the first nonzero coordinate is 1.
pub fn has_point_over_fp2(gens: &[FpPoly], nvars: usize, p: u64) -> bool {
    let n = non_residue(p);
    let elems: Vec<Fp2> = (0..p)
        .flat_map(|a| (0..p).map(move |b| Fp2 { a, b }))
        .collect();
    let q2 = elems.len();
    for lead in 0..nvars {
        let free = nvars - lead - 1;
        for idx in 0..q2.pow(free as u32) {
            let mut xs = vec![FP2_ZERO; nvars];
            xs[lead] = Fp2 { a: 1, b: 0 };
            let mut k = idx;
            for x in xs.iter_mut().skip(lead + 1) {
                *x = elems[k % q2];
                k /= q2;
            }
            if gens.iter().all(|g| eval_fp2(g, &xs, n, p) == FP2_ZERO) {
                return true;
            }
        }
    }
    false
}

pub fn has_point_over_fp(gens: &[FpPoly], nvars: usize, p: u64) -> bool {
    for lead in 0..nvars {
        let free = nvars - lead - 1;
        for idx in 0..p.pow(free as u32) {
            let mut xs = vec![0; nvars];
            xs[lead] = 1;
            let mut k = idx;
            for x in xs.iter_mut().skip(lead + 1) {
                *x = k % p;
                k /= p;
            }
            if gens.iter().all(|g| g.eval(&xs, p) == 0) {
                return true;
            }
        }
    }
    false
}

fn monomials(nvars: usize, deg: u16) -> Vec<Mono> {
    fn go(i: usize, left: u16, nvars: usize, m: &mut Mono, out: &mut Vec<Mono>) {
        if i == nvars - 1 {
            m[i] = left;
            out.push(*m);
            return;
        }
        for e in 0..=left {
            m[i] = e;
            go(i + 1, left - e, nvars, m, out);
        }
    }
    let mut out = Vec::new();
    go(0, deg, nvars, &mut [0u16; 6], &mut out);
    out
}

pub fn ideal_strategy() -> impl Strategy<Value = (u64, usize, Vec<FpPoly>)> {
    (
        prop_oneof![Just(3u64), Just(5), Just(7)],
        2usize..=3,
        1usize..=3,
    )
        .prop_flat_map(|(p, nvars, nforms)| {
            let form = (1u16..=3).prop_flat_map(move |d| {
                let monos = monomials(nvars, d);
                proptest::collection::vec(0..p, monos.len()).prop_map(move |cs| {
                    FpPoly::from_terms(monos.iter().copied().zip(cs).collect(), p)
                })
            });
            proptest::collection::vec(form, nforms)
                .prop_filter("zero form", |gs| gs.iter().all(|g| !g.is_zero()))
                .prop_map(move |gs| (p, nvars, gs))
        })
}

pub fn emptiness_check((p, nvars, gens): (u64, usize, Vec<FpPoly>)) -> Result<(), TestCaseError> {
    let ideal = PrimeFieldIdeal::new(p, nvars, gens.clone()).unwrap();
    let empty = projective_empty(&ideal).unwrap();
    let found = has_point_over_fp(&gens, nvars, p) || has_point_over_fp2(&gens, nvars, p);
    if found {
        prop_assert!(!empty);
    }
    if gens.len() < nvars {
        prop_assert!(!empty);
    }
    // one binary form of degree ≤ 2 splits over 𝔽_{p²}
    if nvars == 2 && gens.len() == 1 && gens[0].terms.iter().all(|(m, _)| m[0] + m[1] <= 2) {
        prop_assert!(found);
    }
    Ok(())
}

/// The property suites named by the acceptance criteria, with their case counts.
pub fn all_suites() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "sturm vs companion roots (200)",
            run(200, sturm_strategy(), sturm_check),
        ),
        (
            "signature congruence invariance (100)",
            run(100, congruence_strategy(), congruence_check),
        ),
        (
            "pgl2 covariance (20)",
            run(20, covariance_strategy(), covariance_check),
        ),
        (
            "parity vs span rank (20)",
            run(20, parity_strategy(), parity_check),
        ),
        (
            "p-adic search vs mod p^6 oracle (30)",
            run(30, padic_strategy(), padic_check),
        ),
        (
            "projective emptiness vs point search (200)",
            run(200, ideal_strategy(), emptiness_check),
        ),
    ]
}
