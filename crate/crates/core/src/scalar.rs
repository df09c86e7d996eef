//! Scalar abstractions shared by the polynomial and linear-algebra kernels.
//!
//! Everything above this module is written against [`Ring`], [`IntegralDomain`]
//! and [`Field`], so the same code runs over exact rationals, real quadratic
//! extensions, polynomial rings (for resultants with a free parameter) and
//! machine floats (for numeric oracles).

use std::fmt::Debug;
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;
}

/// A ring without zero divisors in which exact quotients can be computed.
pub trait IntegralDomain: Ring {
    /// Returns `self / rhs` when `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

pub trait Field: IntegralDomain + Div<Output = Self> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

/// Sign of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_int(n: &BigInt) -> Sign {
        match n.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A field with a fixed embedding into the reals, so signs are decidable.
pub trait RealField: Field {
    fn sign(&self) -> Sign;
    fn to_f64(&self) -> f64;
}

/// Scalars that contain the rationals.
pub trait FromRational {
    fn from_rational(q: &Rational) -> Self;
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl IntegralDomain for Rational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for Rational {}

impl RealField for Rational {
    fn sign(&self) -> Sign {
        Sign::of_rational(self)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl FromRational for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl IntegralDomain for $t {
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0.0 {
                    None
                } else {
                    Some(self / rhs)
                }
            }
        }

        impl Field for $t {}

        impl RealField for $t {
            fn sign(&self) -> Sign {
                if *self > 0.0 {
                    Sign::Positive
                } else if *self < 0.0 {
                    Sign::Negative
                } else {
                    Sign::Zero
                }
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }

        impl FromRational for $t {
            fn from_rational(q: &Rational) -> Self {
                rational_to_f64(q) as $t
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Best-effort conversion that survives numerators/denominators beyond f64 range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    let scaled = if shift > 0 {
        q / Rational::from_integer(BigInt::one() << (shift as usize))
    } else {
        q * Rational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    let n = scaled.numer().to_f64().unwrap_or(f64::NAN);
    let d = scaled.denom().to_f64().unwrap_or(f64::NAN);
    (n / d) * 2f64.powi(shift as i32)
}

/// Parses `"n"` or `"n/d"` with integer `n`, `d`. Decimal literals are rejected so
/// no value is ever rounded on the way in.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || {
        Error::domain(format!(
            "`{s}` is not an exact rational (expected `n` or `n/d`)"
        ))
    };
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::domain(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &r * &r == *n
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() || !is_square_int(q.numer()) || !is_square_int(q.denom()) {
        return None;
    }
    Some(Rational::new(isqrt(q.numer()), isqrt(q.denom())))
}

/// Writes a nonzero integer as `k^2 * d` with `d` squarefree (sign kept in `d`).
///
/// Trial division runs up to `10^5`; a leftover cofactor below `10^10` is then
/// provably squarefree or a perfect square. Larger unresolved cofactors give `None`.
pub fn square_free_split(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut d = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut p = 2u64;
    while p <= 100_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            k *= bp.pow(e / 2);
            if e % 2 == 1 {
                d *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((k, d));
    }
    if is_square_int(&rest) {
        k *= isqrt(&rest);
        return Some((k, d));
    }
    let limit = BigInt::from(100_000u64) * BigInt::from(100_000u64);
    let small_enough = rest < limit || {
        // all prime factors of `rest` exceed 1e5, so a repeated one needs rest >= 1e10
        let p_max = BigInt::from(p);
        &p_max * &p_max * &p_max > rest
    };
    if small_enough {
        d *= rest;
        Some((k, d))
    } else {
        None
    }
}

pub fn is_squarefree_int(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while n.is_multiple_of(&bp) {
        n /= &bp;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rational(q: &Rational, p: u64) -> i64 {
    valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol `(a/p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let bp = BigInt::from(p);
    let a = a.mod_floor(&bp);
    if a.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if a.modpow(&e, &bp).is_one() {
        1
    } else {
        -1
    }
}

/// The simplest rational (smallest denominator, then smallest numerator size)
/// strictly between `lo` and `hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    fn go(lo: &Rational, hi: &Rational) -> Rational {
        // both strictly positive here, lo < hi
        let fl = lo.floor();
        let candidate = &fl + Rational::one();
        if candidate < *hi {
            return candidate;
        }
        // lo and hi share the integer part
        let lo_frac = lo - &fl;
        let hi_frac = hi - &fl;
        if lo_frac.is_zero() {
            // (n, n + hi_frac): take n + 1/k with 1/k < hi_frac
            let k = (Rational::one() / &hi_frac).floor() + Rational::one();
            return fl + Rational::one() / k;
        }
        let inner = go(&(Rational::one() / &hi_frac), &(Rational::one() / &lo_frac));
        fl + Rational::one() / inner
    }
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        if lo.is_zero() {
            let k = (Rational::one() / hi).floor() + Rational::one();
            if hi > &Rational::one() {
                return Rational::one();
            }
            return Rational::one() / k;
        }
        return go(lo, hi);
    }
    // both nonpositive
    -simplest_between(&-hi, &-lo)
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_of_numerators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}
