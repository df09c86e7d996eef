//! Elements `a + b·√d` of a quadratic extension ℚ(√d).
//!
//! The radicand travels with each value. Values built from plain rationals
//! (including `zero()`/`one()`) carry `d = 0` and combine with any field;
//! combining two values bound to different radicands panics, because mixing
//! ℚ(√2) with ℚ(i) would silently leave the field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{
    format_rational, is_squarefree_int, parse_rational, Field, FromRational, IntegralDomain,
    Rational, RealField, Ring, Sign,
};

#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    /// 0 while unbound; otherwise squarefree and not 1.
    d: i64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if d == 1 || !is_squarefree_int(d) {
            return Err(Error::domain(format!(
                "radicand {d} must be a squarefree integer other than 0 and 1"
            )));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `√d` itself.
    pub fn sqrt(d: i64) -> Result<Self> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Radicand, or `None` while the value is not yet bound to a field.
    pub fn radicand(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Rebinds a rational-valued element to the field ℚ(√d).
    pub fn bind(mut self, d: i64) -> Self {
        if self.d == 0 {
            self.d = d;
        }
        self
    }

    /// Galois conjugate `a - b√d`.
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    fn common_d(&self, other: &QuadExt) -> i64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic extensions Q(sqrt({x})) and Q(sqrt({y}))"),
        }
    }

    /// Checked variant of the mixed-field test used by the operators.
    pub fn compatible(&self, other: &QuadExt) -> bool {
        self.d == 0 || other.d == 0 || self.d == other.d
    }

    /// Sign under the real embedding with `√d > 0`. Only meaningful for `d > 0`
    /// (or rational values).
    pub fn real_sign(&self) -> Sign {
        if self.b.is_zero() {
            return Sign::of_rational(&self.a);
        }
        assert!(self.d > 0, "no real embedding of Q(sqrt({}))", self.d);
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let lhs = &self.a * &self.a;
        let rhs = Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }

    pub fn approx(&self) -> f64 {
        let a = crate::scalar::rational_to_f64(&self.a);
        if self.b.is_zero() {
            return a;
        }
        let b = crate::scalar::rational_to_f64(&self.b);
        a + b * (self.d as f64).abs().sqrt() * if self.d > 0 { 1.0 } else { f64::NAN }
    }

    /// Approximation as a complex number `(re, im)`.
    pub fn approx_complex(&self) -> (f64, f64) {
        let a = crate::scalar::rational_to_f64(&self.a);
        let b = crate::scalar::rational_to_f64(&self.b);
        if self.d < 0 {
            (a, b * ((-self.d) as f64).sqrt())
        } else {
            (a + b * (self.d as f64).sqrt(), 0.0)
        }
    }

    /// Parses `a`, `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)`, `sqrt(d)` or `-sqrt(d)`;
    /// `a` and `b` are exact rationals (`n` or `n/d`).
    pub fn parse(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::domain(format!("`{s}`: {why}"));
        let Some(pos) = text.find("sqrt(") else {
            return Ok(QuadExt::rational(parse_rational(&text)?));
        };
        let close = text[pos..].find(')').ok_or_else(|| bad("unclosed sqrt("))? + pos;
        if close + 1 != text.len() {
            return Err(bad("sqrt(d) must be the last factor"));
        }
        let d: i64 = text[pos + 5..close]
            .parse()
            .map_err(|_| bad("radicand must be an integer"))?;
        let head = &text[..pos];
        // head is "", "-", "+", "b*", "a+b*", "a-b*", "a+", "a-"
        let head = head.strip_suffix('*').unwrap_or(head);
        // split rational part from coefficient at the last sign that is not a leading sign
        // or part of a fraction's numerator
        let split = head
            .char_indices()
            .filter(|&(i, c)| {
                i > 0 && (c == '+' || c == '-') && !head[..i].ends_with(['+', '-', '/'])
            })
            .map(|(i, _)| i)
            .next_back();
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_str)?
        };
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        QuadExt::new(a, b, d)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = &self.b;
        if self.a.is_zero() {
            write!(f, "{}*sqrt({})", format_rational(b), self.d)
        } else if b.is_negative() {
            write!(
                f,
                "{}-{}*sqrt({})",
                format_rational(&self.a),
                format_rational(&-b),
                self.d
            )
        } else {
            write!(
                f,
                "{}+{}*sqrt({})",
                format_rational(&self.a),
                format_rational(b),
                self.d
            )
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl std::hash::Hash for QuadExt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

impl FromRational for QuadExt {
    fn from_rational(q: &Rational) -> Self {
        QuadExt::rational(q.clone())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            d,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        let dq = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dq * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt { a, b, d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in quadratic extension");
        let num = self * rhs.conj();
        QuadExt {
            a: num.a / &n,
            b: num.b / n,
            d,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Ring for QuadExt {
    fn from_i64(n: i64) -> Self {
        QuadExt::rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl IntegralDomain for QuadExt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }
}

impl Field for QuadExt {}

impl RealField for QuadExt {
    fn sign(&self) -> Sign {
        self.real_sign()
    }

    fn to_f64(&self) -> f64 {
        self.approx()
    }
}
