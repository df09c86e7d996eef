//! Buchberger's algorithm over prime fields, graded reverse lexicographic order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::scalar::{is_prime_u64, lcm_of_denominators, Rational};

pub const MAX_VARS: usize = 6;

pub type Mono = [u16; MAX_VARS];

/// Polynomial over 𝔽_p: terms sorted by decreasing grevlex monomial, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub terms: Vec<(Mono, u64)>,
}

fn degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn mono_div(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] - b[i])
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] + b[i])
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(Mono, u64)>, p: u64) -> Self {
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut out: Vec<(Mono, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = (last.1 + c) % p,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        FpPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| degree(&w[0].0) == degree(&w[1].0))
    }

    fn make_monic(&mut self, p: u64) {
        if let Some(&(_, c)) = self.terms.first() {
            let inv = inv_mod(c, p);
            for t in &mut self.terms {
                t.1 = mul_mod(t.1, inv, p);
            }
        }
    }

    /// `self - c·x^m·other`.
    fn sub_scaled(&self, c: u64, m: &Mono, other: &FpPoly, p: u64) -> FpPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b: Vec<(Mono, u64)> = other
            .terms
            .iter()
            .map(|(mm, cc)| (mono_mul(mm, m), (p - mul_mod(*cc, c, p)) % p))
            .collect();
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => grevlex(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    if b[j].1 != 0 {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = (a[i].1 + b[j].1) % p;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FpPoly { terms: out }
    }

    pub fn eval(&self, xs: &[u64], p: u64) -> u64 {
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &x) in xs.iter().enumerate() {
                for _ in 0..m[i] {
                    t = mul_mod(t, x, p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// Full reduction of `f` modulo `basis`.
fn reduce(f: &FpPoly, basis: &[FpPoly], p: u64) -> FpPoly {
    let mut rem = Vec::new();
    let mut cur = f.clone();
    while let Some(&(m, c)) = cur.terms.first() {
        match basis.iter().find(|g| divides(g.lm(), &m)) {
            Some(g) => {
                let q = mono_div(&m, g.lm());
                let coef = mul_mod(c, inv_mod(g.terms[0].1, p), p);
                cur = cur.sub_scaled(coef, &q, g, p);
            }
            None => {
                rem.push((m, c));
                cur.terms.remove(0);
            }
        }
    }
    FpPoly { terms: rem }
}

fn s_poly(f: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    let l = mono_lcm(f.lm(), g.lm());
    let mf = mono_div(&l, f.lm());
    let mg = mono_div(&l, g.lm());
    // both monic
    let scaled_f = FpPoly::zero().sub_scaled(p - 1, &mf, f, p);
    scaled_f.sub_scaled(1, &mg, g, p)
}

/// Limits for Buchberger's algorithm.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerBudget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_pairs: 200_000,
            max_basis: 5_000,
            max_degree: 40,
        }
    }
}

/// Ideal in 𝔽_p[x₀..x_{n-1}] with an optional cached reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct PrimeFieldIdeal {
    pub p: u64,
    pub nvars: usize,
    pub generators: Vec<FpPoly>,
    pub projective: bool,
    basis: Option<Vec<FpPoly>>,
}

impl PrimeFieldIdeal {
    pub fn new(p: u64, nvars: usize, generators: Vec<FpPoly>) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
        if nvars > MAX_VARS {
            return Err(Error::Unsupported(format!("at most {MAX_VARS} variables")));
        }
        let projective = generators.iter().all(FpPoly::is_homogeneous);
        Ok(PrimeFieldIdeal {
            p,
            nvars,
            generators,
            projective,
            basis: None,
        })
    }

    /// Reduces rational polynomials mod `p` after clearing denominators; fails when
    /// `p` divides a denominator.
    pub fn from_rational<const N: usize>(p: u64, polys: &[MultiPoly<Rational, N>]) -> Result<Self> {
        let gens = polys
            .iter()
            .map(|f| reduce_rational_poly(f, p))
            .collect::<Result<Vec<_>>>()?;
        PrimeFieldIdeal::new(p, N, gens)
    }

    pub fn basis(&self) -> Option<&[FpPoly]> {
        self.basis.as_deref()
    }
}

/// Image of a rational polynomial in 𝔽_p (denominators must be units mod p).
pub fn reduce_rational_poly<const N: usize>(f: &MultiPoly<Rational, N>, p: u64) -> Result<FpPoly> {
    assert!(N <= MAX_VARS);
    let bp = BigInt::from(p);
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let den = c.denom().mod_floor(&bp);
        if den == BigInt::from(0) {
            return Err(Error::domain(format!(
                "{p} divides a coefficient denominator"
            )));
        }
        let num = c.numer().mod_floor(&bp).to_u64().expect("reduced residue");
        let den = den.to_u64().expect("reduced residue");
        let mut m = [0u16; MAX_VARS];
        for i in 0..N {
            m[i] = e[i] as u16;
        }
        terms.push((m, mul_mod(num, inv_mod(den, p), p)));
    }
    Ok(FpPoly::from_terms(terms, p))
}

/// Scales by the lcm of denominators first, so only the integer content matters.
pub fn reduce_integral<const N: usize>(f: &MultiPoly<Rational, N>, p: u64) -> FpPoly {
    let l = Rational::from_integer(lcm_of_denominators(f.terms().map(|(_, c)| c)));
    reduce_rational_poly(&f.scale(&l), p).expect("integral coefficients")
}

fn buchberger(
    gens: &[FpPoly],
    p: u64,
    nvars: usize,
    budget: GroebnerBudget,
    stop_when_zero_dimensional: bool,
) -> Result<Vec<FpPoly>> {
    let mut basis: Vec<FpPoly> = Vec::new();
    for g in gens {
        let mut r = reduce(g, &basis, p);
        if !r.is_zero() {
            r.make_monic(p);
            basis.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut treated = std::collections::HashSet::new();
    let mut steps = 0usize;
    while !pairs.is_empty() {
        if stop_when_zero_dimensional && has_pure_powers(&basis, nvars) {
            return Ok(basis);
        }
        steps += 1;
        if steps > budget.max_pairs || basis.len() > budget.max_basis {
            return Err(Error::Resource(format!(
                "Groebner basis over F_{p} exceeded {} pairs or {} elements",
                budget.max_pairs, budget.max_basis
            )));
        }
        // normal selection: smallest lcm first
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = mono_lcm(basis[a.0].lm(), basis[a.1].lm());
                let lb = mono_lcm(basis[b.0].lm(), basis[b.1].lm());
                grevlex(&la, &lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        treated.insert((i, j));
        let (li, lj) = (basis[i].lm(), basis[j].lm());
        if coprime(li, lj) {
            continue;
        }
        let l = mono_lcm(li, lj);
        if degree(&l) > budget.max_degree {
            return Err(Error::Resource(format!(
                "Groebner degree bound {} exceeded",
                budget.max_degree
            )));
        }
        let chain = (0..basis.len()).any(|m| {
            m != i
                && m != j
                && divides(basis[m].lm(), &l)
                && treated.contains(&(i.min(m), i.max(m)))
                && treated.contains(&(j.min(m), j.max(m)))
        });
        if chain {
            continue;
        }
        let mut r = reduce(&s_poly(&basis[i], &basis[j], p), &basis, p);
        if r.is_zero() {
            continue;
        }
        r.make_monic(p);
        let n = basis.len();
        basis.push(r);
        for m in 0..n {
            pairs.push((m, n));
        }
    }
    Ok(basis)
}

/// Minimal, then fully interreduced basis.
fn reduce_basis(mut basis: Vec<FpPoly>, p: u64) -> Vec<FpPoly> {
    basis.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    let mut minimal: Vec<FpPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(h.lm(), g.lm())) {
            minimal.retain(|h| !divides(g.lm(), h.lm()));
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<FpPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, g)| g.clone())
            .collect();
        let head = FpPoly {
            terms: vec![minimal[k].terms[0]],
        };
        let tail = FpPoly {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, p);
        r.terms.insert(0, head.terms[0]);
        r.make_monic(p);
        out.push(r);
    }
    out.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    out
}

fn has_pure_powers(basis: &[FpPoly], nvars: usize) -> bool {
    (0..nvars).all(|v| {
        basis.iter().any(|g| {
            let m = g.lm();
            (0..MAX_VARS).all(|i| i == v || m[i] == 0)
        })
    })
}

/// Reduced Gröbner basis (grevlex), cached on the returned ideal.
pub fn groebner_basis(ideal: &PrimeFieldIdeal) -> Result<PrimeFieldIdeal> {
    groebner_basis_with(ideal, GroebnerBudget::default())
}

pub fn groebner_basis_with(
    ideal: &PrimeFieldIdeal,
    budget: GroebnerBudget,
) -> Result<PrimeFieldIdeal> {
    if let Some(b) = &ideal.basis {
        return Ok(PrimeFieldIdeal {
            basis: Some(b.clone()),
            ..ideal.clone()
        });
    }
    let raw = buchberger(&ideal.generators, ideal.p, ideal.nvars, budget, false)?;
    let reduced = reduce_basis(raw, ideal.p);
    Ok(PrimeFieldIdeal {
        basis: Some(reduced),
        ..ideal.clone()
    })
}

/// True iff the ideal has no zeros in projective space over the algebraic closure:
/// some Gröbner basis element has a pure power of each variable as leading term.
pub fn projective_empty(ideal: &PrimeFieldIdeal) -> Result<bool> {
    projective_empty_with(ideal, GroebnerBudget::default())
}

pub fn projective_empty_with(ideal: &PrimeFieldIdeal, budget: GroebnerBudget) -> Result<bool> {
    if !ideal.projective {
        return Err(Error::domain(
            "projective emptiness needs homogeneous generators",
        ));
    }
    let basis = match &ideal.basis {
        Some(b) => b.clone(),
        None => buchberger(&ideal.generators, ideal.p, ideal.nvars, budget, true)?,
    };
    Ok(has_pure_powers(&basis, ideal.nvars))
}
