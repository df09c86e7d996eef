//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{
    format_rational, gcd_of_numerators, lcm_of_denominators, Field, IntegralDomain, Rational, Ring,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        UniPoly::new(coeffs)
    }

    /// The variable `t`.
    pub fn var() -> Self {
        UniPoly::monomial(R::one(), 1)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for size estimates only.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluates in a ring `S` that receives the coefficients through `lift`.
    pub fn eval_with<S: Ring>(&self, x: &S, lift: impl Fn(&R) -> S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_i64(i as i64))
                .collect(),
        )
    }

    /// `t^n · f(1/t)`; `n` must be at least the degree.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(
            self.coeffs.len() <= n + 1,
            "reversal degree below polynomial degree"
        );
        let mut cs = self.coeffs.clone();
        cs.resize(n + 1, R::zero());
        cs.reverse();
        UniPoly::new(cs)
    }

    /// `f(-t)`.
    pub fn reflect(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `f(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            acc * g.clone() + UniPoly::constant(c.clone())
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::constant(R::one()), |acc, _| acc * self.clone())
    }

    /// Evaluates the degree-`n` homogenization at `(t0 : t1)`, where the
    /// coefficient of `t^i` multiplies `t0^i · t1^(n-i)`.
    pub fn eval_homogeneous(&self, n: usize, t0: &R, t1: &R) -> R {
        let mut acc = R::zero();
        let mut p0 = R::one();
        for i in 0..=n {
            let mut p1 = R::one();
            for _ in 0..n - i {
                p1 = p1 * t1.clone();
            }
            acc = acc + self.coeff(i) * p0.clone() * p1;
            p0 = p0 * t0.clone();
        }
        acc
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        UniPoly::new(long)
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<R: Ring> Zero for UniPoly<R> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for UniPoly<R> {
    fn one() -> Self {
        UniPoly::constant(R::one())
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn from_i64(n: i64) -> Self {
        UniPoly::constant(R::from_i64(n))
    }
}

impl<F: Field> IntegralDomain for UniPoly<F> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Yun's algorithm: `f = c · ∏ fᵢ^i` with monic, squarefree, pairwise coprime `fᵢ`.
    pub fn squarefree_decompose(&self) -> Result<Vec<(Self, u32)>> {
        if self.is_zero() {
            return Err(Error::domain(
                "squarefree decomposition of the zero polynomial",
            ));
        }
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let (mut b, _) = f.div_rem(&a0);
        let (c, _) = df.div_rem(&a0);
        let mut d = c - b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            let (b_next, _) = b.div_rem(&a);
            let (c_next, _) = d.div_rem(&a);
            d = c_next - b_next.derivative();
            b = b_next;
            i += 1;
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return UniPoly::constant(F::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }
}

impl UniPoly<Rational> {
    pub fn from_rationals(cs: Vec<Rational>) -> Self {
        UniPoly::new(cs)
    }

    /// Primitive integer polynomial proportional to `self` with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// `self` rescaled to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        UniPoly::new(
            self.primitive_integer()
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// Scales by a positive rational so the coefficients become coprime integers;
    /// signs are preserved.
    pub fn content_stripped(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let scaled: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| c * Rational::from_integer(l.clone()))
            .collect();
        let g = gcd_of_numerators(&scaled);
        UniPoly::new(
            scaled
                .into_iter()
                .map(|c| c / Rational::from_integer(g.clone()))
                .collect(),
        )
    }

    /// If `other = λ·self` for a nonzero rational `λ`, returns `λ`.
    pub fn proportionality(&self, other: &Self) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let lambda = other.lead() / self.lead();
        (self.scale(&lambda) == *other).then_some(lambda)
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n rows of f-coefficients
/// followed by m rows of g-coefficients, highest degree first.
pub fn sylvester_matrix<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Matrix<R> {
    let m = f.deg0();
    let n = g.deg0();
    let size = m + n;
    let mut mat = Matrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat.set(n + i, i + k, c.clone());
        }
    }
    mat
}

/// Sylvester resultant `Res(f, g)` with f-rows first.
pub fn resultant<R: IntegralDomain>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::domain("resultant of two zero polynomials"));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(R::zero());
    }
    Ok(sylvester_matrix(f, g).det_bareiss())
}

/// `Res(f, f')`; equals `(-1)^(n(n-1)/2) · lc(f) · disc(f)`.
pub fn discriminant_resultant<R: IntegralDomain>(f: &UniPoly<R>) -> Result<R> {
    resultant(f, &f.derivative())
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", format_rational(&mag))?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{}*t^{i}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type Q = UniPoly<Rational>;

    fn p(cs: &[i64]) -> Q {
        Q::from_i64s(cs)
    }

    #[test]
    fn arithmetic_and_division() {
        let f = p(&[-1, 0, 1]);
        let g = p(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(f.derivative(), p(&[0, 2]));
        assert_eq!(f.eval(&int(3)), int(8));
        assert_eq!(p(&[1, 2, 3]).reverse(2), p(&[3, 2, 1]));
        assert_eq!(p(&[0, 1]).compose(&p(&[1, 1])), p(&[1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let sq = p(&[1, -2, 1]);
        assert_eq!(sq.squarefree_decompose().unwrap(), vec![(p(&[-1, 1]), 2)]);
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.squarefree_decompose().unwrap(), vec![(f.clone(), 1)]);
        assert!(Q::zero().squarefree_decompose().is_err());

        let third = p(&[7, -6, 1]) * p(&[23, -10, 1]) * p(&[4, 0, 1]) * p(&[3]);
        let parts = third.squarefree_decompose().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 1);
        assert_eq!(parts[0].0, third.monic());

        let mixed = p(&[-1, 1]).pow(3) * p(&[2, 0, 1]) * p(&[5, 1]).pow(2);
        let parts = mixed.squarefree_decompose().unwrap();
        let rebuilt = parts
            .iter()
            .fold(Q::one(), |acc, (f, m)| acc * f.pow(*m))
            .scale(&mixed.lead());
        assert_eq!(rebuilt, mixed);
    }

    #[test]
    fn resultant_pins_sylvester_convention() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(), int(0));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), int(2));
        let f = p(&[-2, 0, 1]);
        let g = p(&[0, -1, 0, 1]);
        // Res(f, g) = (-1)^(deg f · deg g) · lc(g)^deg f · ∏ f(roots of g)
        let roots_of_g = [int(0), int(1), int(-1)];
        let prod = roots_of_g.iter().fold(int(1), |acc, r| acc * f.eval(r));
        assert_eq!(prod, int(-2));
        assert_eq!(resultant(&f, &g).unwrap(), prod);
        assert_eq!(resultant(&g, &f).unwrap(), prod);
        assert!(resultant(&Q::zero(), &Q::zero()).is_err());
    }

    #[test]
    fn resultant_with_parameter() {
        // Res_t(t^2 - c, t - 1) = 1 - c over Q[c]
        type P = UniPoly<Rational>;
        let c = P::var();
        let f: UniPoly<P> = UniPoly::new(vec![-c.clone(), P::zero(), P::one()]);
        let g: UniPoly<P> = UniPoly::new(vec![-P::one(), P::one()]);
        assert_eq!(resultant(&f, &g).unwrap(), P::from_i64s(&[1, -1]));
    }

    #[test]
    fn primitive_and_proportional() {
        let f = Q::new(vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(
            f.primitive_integer(),
            vec![BigInt::from(-2), BigInt::from(3)]
        );
        assert_eq!(f.content_stripped(), p(&[2, -3]));
        assert_eq!(f.proportionality(&p(&[2, -3])), Some(int(4)));
        assert_eq!(f.proportionality(&p(&[2, 3])), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-7, 0, 1]).to_string(), "t^2 - 7");
        assert_eq!(Q::new(vec![rat(1, 2), int(-1)]).to_string(), "-t + 1/2");
    }
}
