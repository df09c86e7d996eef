//! Objects attached to a triple of ternary quadrics: the discriminant quartic,
//! its double cover, the Prym sextic and the fibre forms of the quadric surface
//! fibration.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{projective_empty, reduce_integral, reduce_rational_poly, PrimeFieldIdeal};
use crate::linalg::Matrix;
use crate::multipoly::{MultiPoly, TernaryForm};
use crate::poly::{resultant, UniPoly};
use crate::quadext::QuadExt;
use crate::quadform::{gram_matrix, BinaryForm, SymQuadraticForm};
use crate::real_algebraic::{exact_real_roots, RealAlgebraic};
use crate::scalar::{is_prime_u64, square_free_split, Field, FromRational, Rational};

type QPoly = UniPoly<Rational>;

/// Polynomials in `u, v, w, r, s`.
pub type QuinaryPoly = MultiPoly<Rational, 5>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTriple {
    pub name: String,
    pub q: [TernaryForm; 3],
}

impl FormTriple {
    pub fn new(
        name: impl Into<String>,
        q1: TernaryForm,
        q2: TernaryForm,
        q3: TernaryForm,
    ) -> Result<Self> {
        for (i, q) in [&q1, &q2, &q3].iter().enumerate() {
            if !q.is_homogeneous_of_degree(2) {
                return Err(Error::domain(format!(
                    "Q{} is not a homogeneous quadratic form",
                    i + 1
                )));
            }
        }
        if q1.is_zero() && q2.is_zero() && q3.is_zero() {
            return Err(Error::domain("all three quadratic forms vanish"));
        }
        Ok(FormTriple {
            name: name.into(),
            q: [q1, q2, q3],
        })
    }

    /// Builds from `(key, coefficient)` lists such as `[("u^2", "-1"), ("u*v", "1/2")]`.
    pub fn from_keys(name: &str, forms: [&[(&str, &str)]; 3]) -> Result<Self> {
        let parse = |f: &[(&str, &str)]| TernaryForm::from_key_map(f.iter().copied());
        FormTriple::new(name, parse(forms[0])?, parse(forms[1])?, parse(forms[2])?)
    }

    pub fn matrices(&self) -> [SymQuadraticForm<Rational>; 3] {
        std::array::from_fn(|i| gram_matrix(&self.q[i]).expect("validated quadratic form"))
    }

    /// Odd primes dividing some coefficient denominator.
    pub fn bad_primes(&self) -> Vec<u64> {
        let l = crate::scalar::lcm_of_denominators(
            self.q.iter().flat_map(|f| f.terms().map(|(_, c)| c)),
        );
        let mut out = Vec::new();
        let mut n = l;
        let mut p = 3u64;
        while n > BigInt::one() && p < 1_000_000 {
            let bp = BigInt::from(p);
            if (&n % &bp).is_zero() {
                out.push(p);
                while (&n % &bp).is_zero() {
                    n /= &bp;
                }
            }
            p += 2;
        }
        out
    }

    /// First five odd primes not dividing any coefficient denominator.
    pub fn default_witness_primes(&self) -> Vec<u64> {
        let bad = self.bad_primes();
        (3u64..)
            .filter(|&p| is_prime_u64(p) && !bad.contains(&p))
            .take(5)
            .collect()
    }
}

impl fmt::Display for FormTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: Q1 = {}; Q2 = {}; Q3 = {}",
            self.name, self.q[0], self.q[1], self.q[2]
        )
    }
}

/// `F = Q₂² − Q₁Q₃`.
pub fn discriminant_quartic(triple: &FormTriple) -> TernaryForm {
    let [q1, q2, q3] = &triple.q;
    q2.clone() * q2.clone() - q1.clone() * q3.clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPresentation {
    pub delta: TernaryForm,
    /// `Q₁ − r², Q₂ − rs, Q₃ − s²` in `u, v, w, r, s`.
    pub generators: [QuinaryPoly; 3],
}

pub fn cover_equations(triple: &FormTriple) -> CoverPresentation {
    let r = QuinaryPoly::var(3);
    let s = QuinaryPoly::var(4);
    let [q1, q2, q3] = &triple.q;
    let generators = [
        q1.embed::<5>() - r.clone() * r.clone(),
        q2.embed::<5>() - r * s.clone(),
        q3.embed::<5>() - s.clone() * s,
    ];
    CoverPresentation {
        delta: discriminant_quartic(triple),
        generators,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmoothVerdict {
    Smooth,
    Singular,
    Unknown,
}

impl SmoothVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SmoothVerdict::Smooth => "smooth",
            SmoothVerdict::Singular => "singular",
            SmoothVerdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothEvidence {
    /// Reduction mod this prime has an empty singular locus.
    WitnessPrime(u64),
    /// An exact singular point, re-verified by substitution.
    SingularPoint(Vec<QuadExt>),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub verdict: SmoothVerdict,
    pub evidence: SmoothEvidence,
    /// Primes tried, with the reason each one failed to certify.
    pub attempts: Vec<(u64, String)>,
}

impl SmoothnessCertificate {
    pub fn method(&self) -> &'static str {
        match self.evidence {
            SmoothEvidence::WitnessPrime(_) => "witness-prime",
            SmoothEvidence::SingularPoint(_) => "explicit-singular-point",
            SmoothEvidence::None => "none",
        }
    }
}

/// Smoothness of a plane quartic: a witness prime with empty singular locus mod p
/// proves smoothness; an exact singular point proves the opposite.
pub fn smooth_quartic_check(f: &TernaryForm, primes: &[u64]) -> Result<SmoothnessCertificate> {
    if primes.is_empty() {
        return Err(Error::domain("no witness primes given"));
    }
    if f.is_zero() {
        return Err(Error::domain("the zero form defines no curve"));
    }
    let g = f.primitive();
    let polys = [g.clone(), g.partial(0), g.partial(1), g.partial(2)];
    let mut attempts = Vec::new();
    for &p in primes {
        if p == 2 || !is_prime_u64(p) {
            attempts.push((p, "not an odd prime".to_string()));
            continue;
        }
        let gens = polys.iter().map(|q| reduce_integral(q, p)).collect();
        let ideal = PrimeFieldIdeal::new(p, 3, gens)?;
        match projective_empty(&ideal) {
            Ok(true) => {
                return Ok(SmoothnessCertificate {
                    verdict: SmoothVerdict::Smooth,
                    evidence: SmoothEvidence::WitnessPrime(p),
                    attempts,
                })
            }
            Ok(false) => attempts.push((p, "singular reduction".to_string())),
            Err(e) => attempts.push((p, e.to_string())),
        }
    }
    if let Some(pt) = find_singular_point(&g) {
        return Ok(SmoothnessCertificate {
            verdict: SmoothVerdict::Singular,
            evidence: SmoothEvidence::SingularPoint(pt.to_vec()),
            attempts,
        });
    }
    Ok(SmoothnessCertificate {
        verdict: SmoothVerdict::Unknown,
        evidence: SmoothEvidence::None,
        attempts,
    })
}

/// 3×3 minors of the Jacobian of three quinary polynomials.
pub fn jacobian_minors(gens: &[QuinaryPoly; 3]) -> Vec<QuinaryPoly> {
    let jac: Vec<Vec<QuinaryPoly>> = gens
        .iter()
        .map(|g| (0..5).map(|i| g.partial(i)).collect())
        .collect();
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                let m = |i: usize, j: usize| jac[i][[a, b, c][j]].clone();
                let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
                out.push(det);
            }
        }
    }
    out
}

/// Semidecision for smoothness of the cover in P⁴: "smooth" when, at some witness
/// prime, the quadrics together with all 3×3 Jacobian minors have no common
/// projective zero over the algebraic closure of 𝔽_p. Never claims "singular".
pub fn cover_smooth_witness(pres: &CoverPresentation, primes: &[u64]) -> SmoothnessCertificate {
    let minors = jacobian_minors(&pres.generators);
    let mut attempts = Vec::new();
    for &p in primes {
        if p == 2 || !is_prime_u64(p) {
            attempts.push((p, "not an odd prime".to_string()));
            continue;
        }
        let mut gens = Vec::new();
        let mut bad = None;
        for g in pres.generators.iter() {
            match reduce_rational_poly(g, p) {
                Ok(r) => gens.push(r),
                Err(e) => bad = Some(e.to_string()),
            }
        }
        if let Some(why) = bad {
            attempts.push((p, why));
            continue;
        }
        gens.extend(
            minors
                .iter()
                .map(|m| reduce_rational_poly(m, p).expect("same denominators")),
        );
        let ideal = match PrimeFieldIdeal::new(p, 5, gens) {
            Ok(i) => i,
            Err(e) => {
                attempts.push((p, e.to_string()));
                continue;
            }
        };
        match projective_empty(&ideal) {
            Ok(true) => {
                return SmoothnessCertificate {
                    verdict: SmoothVerdict::Smooth,
                    evidence: SmoothEvidence::WitnessPrime(p),
                    attempts,
                }
            }
            Ok(false) => attempts.push((p, "singular reduction".to_string())),
            Err(e) => attempts.push((p, e.to_string())),
        }
    }
    SmoothnessCertificate {
        verdict: SmoothVerdict::Unknown,
        evidence: SmoothEvidence::None,
        attempts,
    }
}

/// Roots of `f` lying in ℚ or in a quadratic field. Real ones are found exactly;
/// non-real ones are located numerically and then confirmed by exact division.
pub fn roots_of_degree_at_most_two(f: &QPoly) -> Vec<QuadExt> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let g = f.squarefree_part().primitive();
    if let Ok(real) = exact_real_roots(&g) {
        for r in real {
            match r {
                RealAlgebraic::Rational(q) => out.push(QuadExt::rational(q)),
                RealAlgebraic::Quadratic(x) => out.push(x),
                RealAlgebraic::Root(_) => {}
            }
        }
    }
    let n = g.deg0();
    if n < 2 {
        return out;
    }
    let lead = g.lead();
    let monic: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| crate::scalar::rational_to_f64(&(c / &lead)))
        .collect();
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -monic[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = companion.complex_eigenvalues();
    let lead_int = lead.numer().clone();
    for z in eig.iter() {
        if z.im <= 1e-9 * (1.0 + z.re.abs()) {
            continue;
        }
        let s = 2.0 * z.re;
        let p = z.re * z.re + z.im * z.im;
        let round = |x: f64| -> Option<Rational> {
            let l = lead_int.to_f64()?;
            let k = (x * l).round();
            if !k.is_finite() || k.abs() > 9.0e15 {
                return None;
            }
            Some(Rational::new(BigInt::from(k as i64), lead_int.clone()))
        };
        let (Some(sq), Some(pq)) = (round(s), round(p)) else {
            continue;
        };
        let quad = QPoly::new(vec![pq.clone(), -sq.clone(), Rational::one()]);
        if !quad.divides(&g) {
            continue;
        }
        let disc = &sq * &sq - Rational::from_integer(BigInt::from(4)) * &pq;
        if !disc.is_negative() {
            continue;
        }
        let Some((k, dd)) = square_free_split(&(disc.numer() * disc.denom())) else {
            continue;
        };
        let Ok(d) = i64::try_from(&dd) else {
            continue;
        };
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let coef = Rational::new(k, disc.denom().clone()) * &half;
        let centre = &sq * &half;
        for c in [coef.clone(), -coef] {
            let x = QuadExt::new(centre.clone(), c, d).expect("squarefree radicand");
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn lift_q(c: &Rational) -> QuadExt {
    QuadExt::rational(c.clone())
}

fn is_singular_at(f: &TernaryForm, pt: &[QuadExt; 3]) -> bool {
    if pt.iter().all(|x| x.is_zero()) {
        return false;
    }
    let fields: Vec<i64> = pt
        .iter()
        .filter_map(|x| if x.is_rational() { None } else { x.radicand() })
        .collect();
    if fields.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    [f.clone(), f.partial(0), f.partial(1), f.partial(2)]
        .iter()
        .all(|g| g.eval_with(pt, lift_q).is_zero())
}

/// Bivariate polynomial `g(u, v, 1)` as a polynomial in `v` over ℚ[u].
fn affine_in_v(g: &TernaryForm) -> UniPoly<QPoly> {
    let mut cs: Vec<QPoly> = Vec::new();
    for (e, c) in g.terms() {
        let j = e[1] as usize;
        if cs.len() <= j {
            cs.resize(j + 1, QPoly::zero());
        }
        cs[j] = cs[j].clone() + QPoly::monomial(c.clone(), e[0] as usize);
    }
    UniPoly::new(cs)
}

/// Searches for a singular point defined over ℚ or a quadratic field.
pub fn find_singular_point(f: &TernaryForm) -> Option<[QuadExt; 3]> {
    let zero = QuadExt::rational(Rational::zero());
    let one = QuadExt::rational(Rational::one());
    let fu = f.partial(0);
    let fv = f.partial(1);
    let fw = f.partial(2);

    // the line w = 0
    let corner = [one.clone(), zero.clone(), zero.clone()];
    if is_singular_at(f, &corner) {
        return Some(corner);
    }
    let at_infinity = |g: &TernaryForm| -> QPoly {
        let mut cs = Vec::new();
        for (e, c) in g.terms() {
            if e[2] == 0 {
                let j = e[0] as usize;
                if cs.len() <= j {
                    cs.resize(j + 1, Rational::zero());
                }
                cs[j] = &cs[j] + c;
            }
        }
        QPoly::new(cs)
    };
    let h = [f, &fu, &fv, &fw]
        .iter()
        .map(|g| at_infinity(g))
        .fold(QPoly::zero(), |acc, g| acc.gcd(&g));
    let us = if h.is_zero() {
        vec![zero.clone()]
    } else {
        roots_of_degree_at_most_two(&h)
    };
    for u in us {
        let pt = [u, one.clone(), zero.clone()];
        if is_singular_at(f, &pt) {
            return Some(pt);
        }
    }

    // the chart w = 1
    let polys = [affine_in_v(f), affine_in_v(&fu), affine_in_v(&fv)];
    let mut elim: Vec<QPoly> = Vec::new();
    for p in &polys {
        if p.degree() == Some(0) {
            elim.push(p.lead());
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if polys[i].deg0() >= 1 && polys[j].deg0() >= 1 {
                if let Ok(r) = resultant(&polys[i], &polys[j]) {
                    if !r.is_zero() {
                        elim.push(r);
                    }
                }
            }
        }
    }
    let g = elim.iter().fold(QPoly::zero(), |acc, p| acc.gcd(p));
    let candidates: Vec<QuadExt> = if g.is_zero() {
        (-3..=3)
            .map(|k| QuadExt::rational(Rational::from_integer(BigInt::from(k))))
            .collect()
    } else {
        roots_of_degree_at_most_two(&g)
    };
    for u0 in candidates {
        let in_v: Vec<UniPoly<QuadExt>> = polys
            .iter()
            .map(|p| p.map(|c| c.eval_with(&u0, lift_q)))
            .collect();
        let common = in_v
            .iter()
            .fold(UniPoly::<QuadExt>::zero(), |acc, p| acc.gcd(p));
        let vs: Vec<QuadExt> = if common.is_zero() {
            vec![zero.clone()]
        } else if common.degree() == Some(1) {
            vec![-common.coeff(0) / common.coeff(1)]
        } else if u0.is_rational() && common.deg0() >= 2 {
            let rat = common.map(|c| c.as_rational().cloned().unwrap_or_default());
            roots_of_degree_at_most_two(&rat)
        } else {
            Vec::new()
        };
        for v0 in vs {
            if !u0.compatible(&v0) {
                continue;
            }
            let pt = [u0.clone(), v0, one.clone()];
            if is_singular_at(f, &pt) {
                return Some(pt);
            }
        }
    }
    None
}

/// `t₀²·M₁ + 2t₀t₁·M₂ + t₁²·M₃` over any field containing ℚ.
pub fn pencil_matrix<F: Field + FromRational>(triple: &FormTriple, t0: &F, t1: &F) -> Matrix<F> {
    let [m1, m2, m3] = triple.matrices();
    let a = t0.clone() * t0.clone();
    let b = t0.clone() * t1.clone() * F::from_i64(2);
    let c = t1.clone() * t1.clone();
    Matrix::from_fn(3, 3, |i, j| {
        a.clone() * F::from_rational(m1.matrix().get(i, j))
            + b.clone() * F::from_rational(m2.matrix().get(i, j))
            + c.clone() * F::from_rational(m3.matrix().get(i, j))
    })
}

/// Gram matrix of the pencil member at `(t₀ : t₁)`, optionally extended by the `−z²` block.
pub fn pencil_form<F: Field + FromRational>(
    triple: &FormTriple,
    t0: &F,
    t1: &F,
    with_z: bool,
) -> Result<SymQuadraticForm<F>> {
    if t0.is_zero() && t1.is_zero() {
        return Err(Error::domain("(0:0) is not a point of P1"));
    }
    let m = pencil_matrix(triple, t0, t1);
    let m = if with_z {
        m.direct_sum(&Matrix::from_rows(vec![vec![-F::one()]]))
    } else {
        m
    };
    SymQuadraticForm::new(m)
}

/// The 4×4 fibre form of the quadric surface fibration over `(t₀ : t₁)`.
pub fn fiber_form<F: Field + FromRational>(
    triple: &FormTriple,
    t0: &F,
    t1: &F,
) -> Result<SymQuadraticForm<F>> {
    pencil_form(triple, t0, t1, true)
}

/// `−det(t²M₁ + 2tM₂ + M₃)` without any validity check.
pub fn prym_polynomial(triple: &FormTriple) -> QPoly {
    let [m1, m2, m3] = triple.matrices();
    let m = Matrix::from_fn(3, 3, |i, j| {
        QPoly::new(vec![
            m3.matrix().get(i, j).clone(),
            m2.matrix().get(i, j) * Rational::from_integer(BigInt::from(2)),
            m1.matrix().get(i, j).clone(),
        ])
    });
    -m.det_bareiss()
}

/// The genus-2 curve `y² = f(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus2Curve {
    pub f: QPoly,
    pub label: String,
}

impl Genus2Curve {
    /// Validates squarefreeness and degree 5 or 6.
    pub fn new(f: QPoly, label: impl Into<String>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::degenerate(
                "degenerate Prym curve: the sextic vanishes identically",
            ));
        }
        let deg = f.deg0();
        if !f.is_squarefree() {
            let parts = f.squarefree_decompose()?;
            let desc: Vec<String> = parts.iter().map(|(g, m)| format!("({g})^{m}")).collect();
            return Err(Error::degenerate(format!(
                "degenerate Prym curve: f = {} is not squarefree; factorization {} * {}",
                f,
                crate::scalar::format_rational(&f.lead()),
                desc.join(" * ")
            )));
        }
        if deg != 5 && deg != 6 {
            return Err(Error::degenerate(format!(
                "degenerate Prym curve: f = {f} has degree {deg}"
            )));
        }
        Ok(Genus2Curve {
            f,
            label: label.into(),
        })
    }
}

pub fn prym_sextic(triple: &FormTriple) -> Result<Genus2Curve> {
    Genus2Curve::new(
        prym_polynomial(triple),
        format!("Prym curve of {}", triple.name),
    )
}

/// `−det(t₀²M₁ + 2t₀t₁M₂ + t₁²M₃)`; coefficient `i` multiplies `t₀ⁱ·t₁⁶⁻ⁱ`.
pub fn degenerate_fiber_form(triple: &FormTriple) -> Result<BinaryForm<Rational>> {
    let f = prym_polynomial(triple);
    if f.is_zero() {
        return Err(Error::degenerate(
            "the degenerate-fibre sextic vanishes identically",
        ));
    }
    Ok(BinaryForm::new(6, f))
}

/// Binary sextic from coefficients listed from `t₀⁶` down to `t₁⁶`.
pub fn sextic_from_printed(coeffs: &[Rational]) -> Result<BinaryForm<Rational>> {
    if coeffs.len() != 7 {
        return Err(Error::domain("a binary sextic has seven coefficients"));
    }
    let mut cs = coeffs.to_vec();
    cs.reverse();
    Ok(BinaryForm::new(6, QPoly::new(cs)))
}

/// `λ` with `expected = λ·computed`, if the two sextics are proportional.
pub fn match_up_to_scalar(
    computed: &BinaryForm<Rational>,
    expected: &BinaryForm<Rational>,
) -> Option<Rational> {
    if computed.degree != expected.degree {
        return None;
    }
    computed.poly.proportionality(&expected.poly)
}

/// Applies `[[a, b], [c, d]]` through the 3×3 matrix with rows
/// `(b², 2bd, d²)`, `(ab, ad+bc, cd)`, `(a², 2ac, c²)`.
pub fn pgl2_act(m: [[Rational; 2]; 2], triple: &FormTriple) -> Result<FormTriple> {
    let [[a, b], [c, d]] = m;
    if (&a * &d - &b * &c).is_zero() {
        return Err(Error::domain("singular matrix does not act on P1"));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let [q1, q2, q3] = &triple.q;
    let comb = |x: Rational, y: Rational, z: Rational| q1.scale(&x) + q2.scale(&y) + q3.scale(&z);
    let n1 = comb(&b * &b, &two * &b * &d, &d * &d);
    let n2 = comb(&a * &b, &a * &d + &b * &c, &c * &d);
    let n3 = comb(&a * &a, &two * &a * &c, &c * &c);
    FormTriple::new(format!("{} (transformed)", triple.name), n1, n2, n3)
}

/// The root of the original pencil matching the root `t` after `pgl2_act(m, ·)`:
/// `(b·t + a) / (d·t + c)`, or `None` for the point at infinity.
pub fn mobius_preimage(m: &[[Rational; 2]; 2], t: &Rational) -> Option<Rational> {
    let [[a, b], [c, d]] = m;
    let den = d * t + c;
    (!den.is_zero()).then(|| (b * t + a) / den)
}
