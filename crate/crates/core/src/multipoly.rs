//! Sparse multivariate polynomials with a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{format_rational, parse_rational, Rational, Ring};

/// Exponent vector.
pub type Exponent<const N: usize> = [u32; N];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<R, const N: usize> {
    terms: BTreeMap<Exponent<N>, R>,
}

/// Ternary forms in `u, v, w`.
pub type TernaryForm = MultiPoly<Rational, 3>;

/// Variable names used for display and parsing.
pub fn var_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 5] = ["u", "v", "w", "r", "s"];
    if n <= NAMES.len() {
        NAMES[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

impl<R: Ring, const N: usize> MultiPoly<R, N> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn monomial(c: R, e: Exponent<N>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(R::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent<N>, R)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `Σ cᵢ·xᵢ`.
    pub fn linear(cs: &[R; N]) -> Self {
        Self::from_terms((0..N).map(|i| {
            let mut e = [0; N];
            e[i] = 1;
            (e, cs[i].clone())
        }))
    }

    pub fn add_term(&mut self, e: Exponent<N>, c: R) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(e, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent<N>, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent<N>) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True for the zero polynomial too.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S, N> {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(R::one()), |acc, _| acc * self.clone())
    }

    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut f = *e;
            f[i] -= 1;
            (f, c.clone() * R::from_i64(e[i] as i64))
        }))
    }

    /// Evaluates with values in any ring `S` receiving coefficients through `lift`.
    pub fn eval_with<S: Ring>(&self, xs: &[S; N], lift: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for i in 0..N {
                for _ in 0..e[i] {
                    t = t * xs[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval(&self, xs: &[R; N]) -> R {
        self.eval_with(xs, |c| c.clone())
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute<const M: usize>(&self, xs: &[MultiPoly<R, M>; N]) -> MultiPoly<R, M> {
        self.eval_with(xs, |c| MultiPoly::constant(c.clone()))
    }

    /// Restriction to the parametrised line `s·p + q`, as a polynomial in `s`.
    pub fn restrict_affine(&self, p: &[R; N], q: &[R; N]) -> UniPoly<R> {
        let xs: [UniPoly<R>; N] =
            std::array::from_fn(|i| UniPoly::new(vec![q[i].clone(), p[i].clone()]));
        self.eval_with(&xs, |c| UniPoly::constant(c.clone()))
    }

    /// Adds one variable at the end (all exponents zero there).
    pub fn embed<const M: usize>(&self) -> MultiPoly<R, M> {
        assert!(M >= N, "embedding into fewer variables");
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut f = [0; M];
            f[..N].copy_from_slice(e);
            (f, c.clone())
        }))
    }
}

impl<R: Ring, const N: usize> Add for MultiPoly<R, N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring, const N: usize> Neg for MultiPoly<R, N> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring, const N: usize> Sub for MultiPoly<R, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring, const N: usize> Mul for MultiPoly<R, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Ring, const N: usize> Zero for MultiPoly<R, N> {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring, const N: usize> One for MultiPoly<R, N> {
    fn one() -> Self {
        MultiPoly::constant(R::one())
    }
}

impl<R: Ring, const N: usize> Ring for MultiPoly<R, N> {
    fn from_i64(n: i64) -> Self {
        MultiPoly::constant(R::from_i64(n))
    }
}

/// Monomial key such as `u^2`, `u*v`, `w`, or `1`.
pub fn monomial_key<const N: usize>(e: &Exponent<N>) -> String {
    let names = var_names(N);
    let parts: Vec<String> = (0..N)
        .filter(|&i| e[i] > 0)
        .map(|i| {
            if e[i] == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Inverse of [`monomial_key`]; also accepts repeated factors like `u*u`.
pub fn parse_monomial_key<const N: usize>(key: &str) -> Result<Exponent<N>> {
    let names = var_names(N);
    let mut e = [0u32; N];
    let key = key.trim();
    if key == "1" {
        return Ok(e);
    }
    for factor in key.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::domain(format!("bad exponent in monomial `{key}`")))?,
            ),
            None => (factor, 1),
        };
        let i = names.iter().position(|n| n == name).ok_or_else(|| {
            Error::domain(format!("unknown variable `{name}` in monomial `{key}`"))
        })?;
        e[i] += power;
    }
    Ok(e)
}

impl<const N: usize> MultiPoly<Rational, N> {
    /// Parses a map from monomial keys to exact rational strings.
    pub fn from_key_map<'a>(entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut p = Self::zero();
        for (k, v) in entries {
            p.add_term(parse_monomial_key::<N>(k)?, parse_rational(v)?);
        }
        Ok(p)
    }

    /// Monomial key → coefficient string, in key order.
    pub fn to_key_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| (monomial_key(e), format_rational(c)))
            .collect()
    }

    /// Primitive integral multiple with positive leading (largest-exponent) coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = crate::scalar::lcm_of_denominators(self.terms.values());
        let lq = Rational::from_integer(l);
        let scaled: Vec<Rational> = self.terms.values().map(|c| c * &lq).collect();
        let g = crate::scalar::gcd_of_numerators(&scaled);
        let mut k = lq / Rational::from_integer(g);
        if self
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative())
        {
            k = -k;
        }
        self.scale(&k)
    }

    /// If `other = λ·self` for a nonzero rational `λ`, returns `λ`.
    pub fn proportionality(&self, other: &Self) -> Option<Rational> {
        let (e, c) = self.terms.iter().next()?;
        let lambda = other.coeff(e) / c;
        (!lambda.is_zero() && self.scale(&lambda) == *other).then_some(lambda)
    }
}

impl<const N: usize> fmt::Display for MultiPoly<Rational, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest exponents of the first variable first
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let key = monomial_key(e);
            if key == "1" {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{}*{key}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn form(entries: &[(&str, &str)]) -> TernaryForm {
        TernaryForm::from_key_map(entries.iter().copied()).unwrap()
    }

    #[test]
    fn keys_round_trip() {
        for key in ["u^2", "u*v", "w", "1", "v^3*w"] {
            let e = parse_monomial_key::<3>(key).unwrap();
            assert_eq!(monomial_key(&e), key);
        }
        assert_eq!(parse_monomial_key::<3>("u*u").unwrap(), [2, 0, 0]);
        assert!(parse_monomial_key::<3>("x^2").is_err());
    }

    #[test]
    fn arithmetic_and_partials() {
        let q = form(&[("u^2", "1"), ("u*v", "2"), ("w^2", "-3")]);
        let sq = q.clone() * q.clone();
        assert!(sq.is_homogeneous_of_degree(4));
        assert_eq!(sq.eval(&[int(1), int(1), int(1)]), int(0));
        assert_eq!(q.partial(0), form(&[("u", "2"), ("v", "2")]));
        assert_eq!(q.to_string(), "u^2 + 2*u*v - 3*w^2");
    }

    #[test]
    fn restriction_to_line() {
        let q = form(&[("u^2", "1"), ("v^2", "1"), ("w^2", "1")]);
        // s·(1,0,0) + (0,1,0)
        let g = q.restrict_affine(&[int(1), int(0), int(0)], &[int(0), int(1), int(0)]);
        assert_eq!(g, UniPoly::from_i64s(&[1, 0, 1]));
    }

    #[test]
    fn primitive_scaling() {
        let q = form(&[("u^2", "-1/2"), ("v^2", "3/4")]);
        assert_eq!(q.primitive(), form(&[("u^2", "2"), ("v^2", "-3")]));
        assert_eq!(q.proportionality(&q.primitive()), Some(int(-4)));
    }
}
