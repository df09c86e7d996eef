//! Sturm sequences and real root isolation over ℚ.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::real_algebraic::RealAlgebraic;
use crate::scalar::{Rational, Sign};

type QPoly = UniPoly<Rational>;

/// Sign of an integer polynomial (lowest degree first) at the rational `x`.
pub fn sign_int_poly_at(coeffs: &[BigInt], x: &Rational) -> Sign {
    let Some(last) = coeffs.last() else {
        return Sign::Zero;
    };
    let p = x.numer();
    let q = x.denom();
    // q^n · f(p/q), with q > 0
    let mut acc = last.clone();
    let mut qpow = BigInt::one();
    for c in coeffs.iter().rev().skip(1) {
        qpow *= q;
        acc = acc * p + c * &qpow;
    }
    Sign::of_int(&acc)
}

pub fn sign_at_rational(f: &QPoly, x: &Rational) -> Sign {
    Sign::of_rational(&f.eval(x))
}

/// Integer coefficients of `f` scaled by a positive rational.
fn positive_integer_form(f: &QPoly) -> Vec<BigInt> {
    f.content_stripped()
        .coeffs()
        .iter()
        .map(|c| c.numer().clone())
        .collect()
}

fn sign_at_pos_inf(c: &[BigInt]) -> Sign {
    c.last().map_or(Sign::Zero, Sign::of_int)
}

fn sign_at_neg_inf(c: &[BigInt]) -> Sign {
    match c.last() {
        None => Sign::Zero,
        Some(l) if c.len().is_multiple_of(2) => Sign::of_int(l).flip(),
        Some(l) => Sign::of_int(l),
    }
}

fn variations(signs: impl IntoIterator<Item = Sign>) -> usize {
    let mut prev = Sign::Zero;
    let mut n = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if prev != Sign::Zero && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

/// Canonical Sturm sequence `f, f', -rem(...)...`, each term rescaled by a positive
/// rational to coprime integer coefficients.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    polys: Vec<QPoly>,
    ints: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(f: &QPoly) -> Self {
        let mut polys = Vec::new();
        if !f.is_zero() {
            polys.push(f.content_stripped());
            let d = f.derivative();
            if !d.is_zero() {
                polys.push(d.content_stripped());
                loop {
                    let n = polys.len();
                    let r = polys[n - 2].rem(&polys[n - 1]);
                    if r.is_zero() {
                        break;
                    }
                    polys.push((-r).content_stripped());
                }
            }
        }
        let ints = polys.iter().map(positive_integer_form).collect();
        SturmSequence { polys, ints }
    }

    pub fn polys(&self) -> &[QPoly] {
        &self.polys
    }

    pub fn variations_at_rational(&self, x: &Rational) -> usize {
        variations(self.ints.iter().map(|c| sign_int_poly_at(c, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.ints.iter().map(|c| sign_at_pos_inf(c)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.ints.iter().map(|c| sign_at_neg_inf(c)))
    }

    pub fn variations_at(&self, x: &RealAlgebraic) -> usize {
        match x {
            RealAlgebraic::Rational(q) => self.variations_at_rational(q),
            _ => variations(self.polys.iter().map(|p| x.sign_of(p))),
        }
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at_rational(lo)
            .saturating_sub(self.variations_at_rational(hi))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// An interval `(lo, hi]` containing exactly one real root of a squarefree witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub poly: QPoly,
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the interval once, keeping the root. Returns the root itself when the
    /// midpoint hits it.
    pub fn bisect(&self) -> std::result::Result<IsolatingInterval, Rational> {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let sm = sign_at_rational(&self.poly, &mid);
        if sm == Sign::Zero {
            return Err(mid);
        }
        let sh = sign_at_rational(&self.poly, &self.hi);
        if sh == Sign::Zero {
            return Err(self.hi.clone());
        }
        if sm == sh {
            Ok(IsolatingInterval {
                poly: self.poly.clone(),
                lo: self.lo.clone(),
                hi: mid,
            })
        } else {
            Ok(IsolatingInterval {
                poly: self.poly.clone(),
                lo: mid,
                hi: self.hi.clone(),
            })
        }
    }

    /// Refines until the width is at most `width`; a rational root hit exactly is returned
    /// as `Err`.
    pub fn refine_to(&self, width: &Rational) -> std::result::Result<IsolatingInterval, Rational> {
        let mut cur = self.clone();
        while cur.width() > *width {
            cur = cur.bisect()?;
        }
        Ok(cur)
    }

    /// Sturm count of the witness on the interval.
    pub fn certified_count(&self) -> usize {
        SturmSequence::new(&self.poly).count(&self.lo, &self.hi)
    }
}

/// Power of two strictly above every root modulus (Cauchy bound).
pub fn root_bound(f: &QPoly) -> Rational {
    let lead = f.lead().abs();
    let m = f
        .coeffs()
        .iter()
        .take(f.deg0())
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b < bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

fn isolate_in(
    seq: &SturmSequence,
    f: &QPoly,
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<IsolatingInterval>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(IsolatingInterval {
            poly: f.clone(),
            lo,
            hi,
        });
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
    let left = seq.count(&lo, &mid);
    isolate_in(seq, f, lo, mid.clone(), left, out);
    isolate_in(seq, f, mid, hi, count - left, out);
}

/// Ordered isolating intervals for the distinct real roots of `f` (optionally only
/// those in `(range.0, range.1]`). The witness of each interval is the primitive
/// squarefree part of `f`.
pub fn isolate_real_roots(
    f: &QPoly,
    range: Option<(&RealAlgebraic, &RealAlgebraic)>,
) -> Result<Vec<IsolatingInterval>> {
    if f.is_zero() {
        return Err(Error::domain("root isolation of the zero polynomial"));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let g = f.squarefree_part().primitive();
    let seq = SturmSequence::new(&g);
    let b = root_bound(&g);
    let total = seq.count(&-b.clone(), &b);
    let mut out = Vec::with_capacity(total);
    isolate_in(&seq, &g, -b.clone(), b, total, &mut out);
    if let Some((lo, hi)) = range {
        let mut kept = Vec::new();
        for iv in out {
            let x = RealAlgebraic::from_interval(iv.clone());
            if x > *lo && x <= *hi {
                kept.push(iv);
            }
        }
        return Ok(kept);
    }
    Ok(out)
}

/// Exact number of distinct real roots of a squarefree `f` in `(lo, hi]`.
pub fn count_roots_in_interval(f: &QPoly, lo: &RealAlgebraic, hi: &RealAlgebraic) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::domain("root count of the zero polynomial"));
    }
    if !f.is_squarefree() {
        return Err(Error::domain(
            "root counting needs a squarefree polynomial; reduce with squarefree_part first",
        ));
    }
    if lo >= hi {
        return Err(Error::domain("empty interval: lo must be below hi"));
    }
    let seq = SturmSequence::new(f);
    Ok(seq.variations_at(lo).saturating_sub(seq.variations_at(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadext::QuadExt;
    use crate::scalar::{int, rat};

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn two_roots_of_t2_minus_1() {
        let iv = isolate_real_roots(&p(&[-1, 0, 1]), None).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].hi <= iv[1].lo);
        assert!(iv[0].lo >= int(-2) && iv[1].hi <= int(2));
        for i in &iv {
            assert_eq!(i.certified_count(), 1);
        }
    }

    #[test]
    fn counts_with_rational_and_quadratic_endpoints() {
        let f = p(&[-2, 0, 1]);
        let r = |q: Rational| RealAlgebraic::Rational(q);
        assert_eq!(
            count_roots_in_interval(&f, &r(int(0)), &r(int(2))).unwrap(),
            1
        );
        let one_plus_root2 = RealAlgebraic::Quadratic(QuadExt::parse("1+1*sqrt(2)").unwrap());
        assert_eq!(
            count_roots_in_interval(&f, &r(rat(3, 2)), &one_plus_root2).unwrap(),
            0
        );
        let root2 = RealAlgebraic::Quadratic(QuadExt::sqrt(2).unwrap());
        assert_eq!(count_roots_in_interval(&f, &r(int(0)), &root2).unwrap(), 1);
        assert!(count_roots_in_interval(&p(&[1, -2, 1]), &r(int(0)), &r(int(2))).is_err());
    }

    #[test]
    fn integer_sign_evaluation() {
        let c: Vec<BigInt> = [-2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(sign_int_poly_at(&c, &rat(3, 2)), Sign::Positive);
        assert_eq!(sign_int_poly_at(&c, &rat(-7, 5)), Sign::Negative);
        assert_eq!(sign_int_poly_at(&c, &int(0)), Sign::Negative);
    }

    #[test]
    fn root_at_bisection_point() {
        let iv = isolate_real_roots(&p(&[0, -1, 0, 1]), None).unwrap();
        assert_eq!(iv.len(), 3);
        let xs: Vec<RealAlgebraic> = iv.into_iter().map(RealAlgebraic::from_interval).collect();
        assert_eq!(xs[1], RealAlgebraic::Rational(int(0)));
    }
}
