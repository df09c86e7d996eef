#![allow(dead_code)]

pub mod suites;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use prymcheck_core::bundle::FormTriple;
use prymcheck_core::multipoly::{MultiPoly, TernaryForm};
use prymcheck_core::prym::{DivisorCertificate, QuadFieldPoint};
use prymcheck_core::{QMatrix, QPoly, QuadExt, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn disconnected() -> FormTriple {
    FormTriple::from_keys(
        "disconnected",
        [
            &[
                ("u^2", "-31"),
                ("u*v", "12"),
                ("v^2", "-6"),
                ("u*w", "9"),
                ("v*w", "531"),
                ("w^2", "25"),
            ],
            &[
                ("u^2", "-25"),
                ("u*v", "120"),
                ("v^2", "30"),
                ("u*w", "-31"),
                ("v*w", "37"),
            ],
            &[
                ("u^2", "-8047"),
                ("u*v", "1092"),
                ("v^2", "-1446"),
                ("u*w", "-423"),
                ("v*w", "-375"),
                ("w^2", "-25"),
            ],
        ],
    )
    .unwrap()
}

pub fn sphere() -> FormTriple {
    FormTriple::from_keys(
        "sphere",
        [
            &[
                ("u^2", "-31"),
                ("u*v", "12"),
                ("v^2", "-6"),
                ("u*w", "4"),
                ("v*w", "8"),
                ("w^2", "25"),
            ],
            &[
                ("u^2", "-25"),
                ("u*v", "120"),
                ("v^2", "30"),
                ("u*w", "9"),
                ("v*w", "-1"),
            ],
            &[
                ("u^2", "-8047"),
                ("u*v", "1092"),
                ("v^2", "-1446"),
                ("u*w", "4"),
                ("v*w", "7"),
                ("w^2", "-25"),
            ],
        ],
    )
    .unwrap()
}

pub fn diagonal() -> FormTriple {
    FormTriple::from_keys(
        "diagonal",
        [
            &[("u^2", "-1"), ("v^2", "-1"), ("w^2", "-3")],
            &[("u^2", "3"), ("v^2", "5")],
            &[("u^2", "-7"), ("v^2", "-23"), ("w^2", "-12")],
        ],
    )
    .unwrap()
}

pub fn certificate() -> DivisorCertificate {
    let points = [
        ["-sqrt(-1)", "2", "0", "4-3*sqrt(-1)", "52-21*sqrt(-1)"],
        ["sqrt(-1)", "2", "0", "4+3*sqrt(-1)", "52+21*sqrt(-1)"],
        ["1-sqrt(-1)", "4", "0", "1+7*sqrt(-1)", "-41-143*sqrt(-1)"],
        ["1+sqrt(-1)", "4", "0", "1-7*sqrt(-1)", "-41+143*sqrt(-1)"],
    ]
    .iter()
    .map(|p| QuadFieldPoint::parse(p).unwrap())
    .collect();
    DivisorCertificate::new(points, -1, [q(0), q(0), q(1)]).unwrap()
}

pub fn poly(cs: &[i64]) -> QPoly {
    QPoly::from_i64s(cs)
}

/// Integer polynomial of degree exactly `1..=max_deg` with coefficients in `[-r, r]`.
pub fn int_poly(max_deg: usize, r: i64) -> impl Strategy<Value = QPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        (
            proptest::collection::vec(-r..=r, d),
            (1..=r).prop_flat_map(|x| prop_oneof![Just(x), Just(-x)]),
        )
            .prop_map(|(mut cs, lead)| {
                cs.push(lead);
                QPoly::from_i64s(&cs)
            })
    })
}

const MONOS: [&str; 6] = ["u^2", "u*v", "v^2", "u*w", "v*w", "w^2"];

pub fn ternary_quadric(r: i64) -> impl Strategy<Value = TernaryForm> {
    proptest::collection::vec(-r..=r, 6).prop_map(|cs| {
        let entries: Vec<(String, String)> = MONOS
            .iter()
            .zip(&cs)
            .map(|(m, c)| (m.to_string(), c.to_string()))
            .collect();
        TernaryForm::from_key_map(entries.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap()
    })
}

pub fn triple(r: i64) -> impl Strategy<Value = FormTriple> {
    (ternary_quadric(r), ternary_quadric(r), ternary_quadric(r))
        .prop_filter_map("all forms zero", |(a, b, c)| {
            FormTriple::new("random", a, b, c).ok()
        })
}

/// Invertible integer 2×2 matrix with small entries.
pub fn gl2(r: i64) -> impl Strategy<Value = [[Rational; 2]; 2]> {
    proptest::array::uniform4(-r..=r)
        .prop_filter("singular", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| [[q(m[0]), q(m[1])], [q(m[2]), q(m[3])]])
}

/// Invertible integer n×n matrix with small entries.
pub fn gl_n(n: usize, r: i64) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(-r..=r, n * n)
        .prop_map(move |cs| QMatrix::from_fn(n, n, |i, j| q(cs[i * n + j])))
        .prop_filter("singular", |m| !m.det_bareiss().is_zero())
}

pub fn det3(m: &QMatrix) -> Rational {
    let g = |i, j| m.get(i, j).clone();
    g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
        - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
        + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
}

pub fn linear(cs: [i64; 3]) -> TernaryForm {
    MultiPoly::linear(&cs.map(q))
}

/// `Q ∘ A` for the substitution `(u, v, w) ↦ A·(u, v, w)`.
pub fn compose(f: &TernaryForm, a: &QMatrix) -> TernaryForm {
    let row = |i: usize| {
        MultiPoly::linear(&[
            a.get(i, 0).clone(),
            a.get(i, 1).clone(),
            a.get(i, 2).clone(),
        ])
    };
    f.substitute(&[row(0), row(1), row(2)])
}

pub fn gl3_act(a: &QMatrix, t: &FormTriple) -> FormTriple {
    FormTriple::new(
        "moved",
        compose(&t.q[0], a),
        compose(&t.q[1], a),
        compose(&t.q[2], a),
    )
    .unwrap()
}

pub fn inverse3(a: &QMatrix) -> QMatrix {
    let det = det3(a);
    QMatrix::from_fn(3, 3, |i, j| {
        let (r0, r1) = ([1, 0, 0][j], [2, 2, 1][j]);
        let (c0, c1) = ([1, 0, 0][i], [2, 2, 1][i]);
        let minor = a.get(r0, c0) * a.get(r1, c1) - a.get(r0, c1) * a.get(r1, c0);
        let sign = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
        sign * minor / det.clone()
    })
}

pub fn moved_point(p: &QuadFieldPoint, ainv: &QMatrix, m: &[[Rational; 2]; 2]) -> QuadFieldPoint {
    let lift = |x: &Rational| QuadExt::rational(x.clone());
    let [u, v, w, r, s] = p.coords.clone();
    let xyz = [u, v, w];
    let image: [QuadExt; 3] = std::array::from_fn(|i| {
        (0..3).fold(QuadExt::rational(q(0)), |acc, j| {
            acc + lift(ainv.get(i, j)) * xyz[j].clone()
        })
    });
    let [[a, b], [c, d]] = m;
    let r2 = lift(b) * r.clone() + lift(d) * s.clone();
    let s2 = lift(a) * r + lift(c) * s;
    let [u2, v2, w2] = image;
    QuadFieldPoint::new([u2, v2, w2, r2, s2]).unwrap()
}
