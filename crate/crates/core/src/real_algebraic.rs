//! Exact real algebraic numbers of the shapes needed here: rationals, real
//! quadratic irrationals and roots of squarefree polynomials given by an
//! isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Result;
use crate::poly::UniPoly;
use crate::quadext::QuadExt;
use crate::scalar::{isqrt, rational_to_f64, simplest_between, square_free_split, Rational, Sign};
use crate::sturm::{isolate_real_roots, sign_at_rational, IsolatingInterval, SturmSequence};

type QPoly = UniPoly<Rational>;

#[derive(Clone, Debug)]
pub enum RealAlgebraic {
    Rational(Rational),
    /// `a + b√d` with `d > 0` and `b ≠ 0`.
    Quadratic(QuadExt),
    /// The unique root of `poly` strictly inside `(lo, hi)`; never rational.
    Root(IsolatingInterval),
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

impl RealAlgebraic {
    pub fn rational(q: Rational) -> Self {
        RealAlgebraic::Rational(q)
    }

    pub fn int(n: i64) -> Self {
        RealAlgebraic::Rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Normalises a quadratic value; rational inputs collapse to the rational variant.
    pub fn quadratic(x: QuadExt) -> Self {
        match x.as_rational() {
            Some(q) => RealAlgebraic::Rational(q.clone()),
            None => {
                assert!(
                    x.radicand().is_some_and(|d| d > 0),
                    "quadratic real algebraic needs d > 0"
                );
                RealAlgebraic::Quadratic(x)
            }
        }
    }

    /// Wraps an isolating interval, detecting a rational root at its right end.
    pub fn from_interval(iv: IsolatingInterval) -> Self {
        if sign_at_rational(&iv.poly, &iv.hi) == Sign::Zero {
            return RealAlgebraic::Rational(iv.hi);
        }
        RealAlgebraic::Root(iv)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealAlgebraic::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// A squarefree polynomial over ℚ vanishing at `self`.
    pub fn defining_poly(&self) -> QPoly {
        match self {
            RealAlgebraic::Rational(q) => QPoly::new(vec![-q.clone(), Rational::one()]),
            RealAlgebraic::Quadratic(x) => {
                let d = Rational::from_integer(BigInt::from(x.radicand().unwrap_or(0)));
                let a = x.a();
                let b = x.b();
                QPoly::new(vec![a * a - d * b * b, -(two() * a), Rational::one()])
            }
            RealAlgebraic::Root(iv) => iv.poly.clone(),
        }
    }

    /// An isolating interval for a quadratic irrational.
    fn quadratic_interval(x: &QuadExt, width: &Rational) -> IsolatingInterval {
        let d = BigInt::from(x.radicand().expect("bound radicand"));
        let babs = x.b().abs();
        // √d ∈ [s/2^k, (s+1)/2^k] with s = floor(√(d·4^k))
        let mut k = 2u32;
        loop {
            let scale = BigInt::one() << k;
            if Rational::new(babs.numer().clone(), babs.denom() * &scale) < *width {
                break;
            }
            k += 4;
        }
        let scale = BigInt::one() << k;
        let s = isqrt(&(&d * &scale * &scale));
        let s_lo = Rational::new(s.clone(), scale.clone());
        let s_hi = Rational::new(s + 1, scale);
        let (lo, hi) = if x.b().is_positive() {
            (x.a() + x.b() * s_lo, x.a() + x.b() * s_hi)
        } else {
            (x.a() + x.b() * s_hi, x.a() + x.b() * s_lo)
        };
        let poly = RealAlgebraic::Quadratic(x.clone())
            .defining_poly()
            .primitive();
        IsolatingInterval { poly, lo, hi }
    }

    /// Interval form of any irrational value; `None` for rationals.
    pub fn to_interval(&self) -> Option<IsolatingInterval> {
        match self {
            RealAlgebraic::Rational(_) => None,
            RealAlgebraic::Quadratic(x) => Some(Self::quadratic_interval(x, &Rational::one())),
            RealAlgebraic::Root(iv) => Some(iv.clone()),
        }
    }

    /// Rational bounds `lo ≤ self ≤ hi` with `hi - lo ≤ width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        match self {
            RealAlgebraic::Rational(q) => (q.clone(), q.clone()),
            RealAlgebraic::Quadratic(x) => {
                let iv = Self::quadratic_interval(x, width);
                (iv.lo, iv.hi)
            }
            RealAlgebraic::Root(iv) => match iv.refine_to(width) {
                Ok(r) => (r.lo, r.hi),
                Err(q) => (q.clone(), q),
            },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealAlgebraic::Rational(q) => rational_to_f64(q),
            RealAlgebraic::Quadratic(x) => x.approx(),
            RealAlgebraic::Root(iv) => {
                let mag = iv.hi.abs().max(iv.lo.abs()).max(Rational::one());
                let w = mag / Rational::from_integer(BigInt::one() << 60);
                let (lo, hi) = self.enclosure(&w);
                rational_to_f64(&((lo + hi) / two()))
            }
        }
    }

    /// Exact sign of `f(self)`.
    pub fn sign_of(&self, f: &QPoly) -> Sign {
        if f.is_zero() {
            return Sign::Zero;
        }
        match self {
            RealAlgebraic::Rational(q) => sign_at_rational(f, q),
            RealAlgebraic::Quadratic(x) => {
                f.eval_with(x, |c| QuadExt::rational(c.clone())).real_sign()
            }
            RealAlgebraic::Root(iv) => sign_at_root(f, iv),
        }
    }

    fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            RealAlgebraic::Rational(x) => x.cmp(q),
            RealAlgebraic::Quadratic(x) => {
                match (x.clone() - QuadExt::rational(q.clone())).real_sign() {
                    Sign::Negative => Ordering::Less,
                    Sign::Zero => Ordering::Equal,
                    Sign::Positive => Ordering::Greater,
                }
            }
            RealAlgebraic::Root(iv) => {
                if *q <= iv.lo {
                    return Ordering::Greater;
                }
                if *q >= iv.hi {
                    return Ordering::Less;
                }
                let sq = sign_at_rational(&iv.poly, q);
                if sq == Sign::Zero {
                    return Ordering::Equal;
                }
                // root in (q, hi) iff f(q) and f(hi) differ in sign
                if sq == sign_at_rational(&iv.poly, &iv.hi) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        use RealAlgebraic::*;
        match (self, other) {
            (_, Rational(q)) => self.cmp_rational(q),
            (Rational(q), _) => other.cmp_rational(q).reverse(),
            (Quadratic(x), Quadratic(y)) if x.compatible(y) => {
                match (x.clone() - y.clone()).real_sign() {
                    Sign::Negative => Ordering::Less,
                    Sign::Zero => Ordering::Equal,
                    Sign::Positive => Ordering::Greater,
                }
            }
            _ => {
                let a = self.to_interval().expect("irrational");
                let b = other.to_interval().expect("irrational");
                cmp_roots(a, b)
            }
        }
    }

    /// A short rational strictly between `self` and `other` (which must differ).
    pub fn rational_between(&self, other: &Self) -> Rational {
        let (a, b) = match self.cmp_exact(other) {
            Ordering::Less => (self, other),
            Ordering::Greater => (other, self),
            Ordering::Equal => panic!("no rational strictly between equal numbers"),
        };
        let mut w = Rational::one();
        loop {
            let (_, a_hi) = a.enclosure(&w);
            let (b_lo, _) = b.enclosure(&w);
            if a_hi < b_lo {
                return simplest_between(&a_hi, &b_lo);
            }
            if a_hi == b_lo && a.as_rational().is_none() && b.as_rational().is_none() {
                // shared endpoint of two open intervals
                let (_, ah) = a.enclosure(&(&w / two()));
                let (bl, _) = b.enclosure(&(&w / two()));
                if ah < bl {
                    return simplest_between(&ah, &bl);
                }
            }
            if a_hi == b_lo && (a.as_rational().is_some() != b.as_rational().is_some()) {
                // one side is exactly the rational endpoint
                let q = a_hi.clone();
                if a.as_rational().is_some() {
                    let (bl, _) = b.enclosure(&(&w / two()));
                    if q < bl {
                        return simplest_between(&q, &bl);
                    }
                } else {
                    let (_, ah) = a.enclosure(&(&w / two()));
                    if ah < q {
                        return simplest_between(&ah, &q);
                    }
                }
            }
            w /= Rational::from_integer(BigInt::from(16));
        }
    }

    /// Replaces an interval root by a rational or quadratic value when its witness
    /// has a matching linear or quadratic factor over ℚ.
    pub fn simplify(&self) -> RealAlgebraic {
        match self {
            RealAlgebraic::Root(iv) => exact_real_roots(&iv.poly)
                .ok()
                .and_then(|roots| {
                    roots
                        .into_iter()
                        .find(|r| r.cmp_exact(self) == Ordering::Equal)
                })
                .unwrap_or_else(|| self.clone()),
            _ => self.clone(),
        }
    }
}

fn sign_at_root(f: &QPoly, iv: &IsolatingInterval) -> Sign {
    let h = iv.poly.gcd(f);
    if !h.is_constant() && SturmSequence::new(&h).count(&iv.lo, &iv.hi) == 1 {
        return Sign::Zero;
    }
    let g = f.squarefree_part();
    let seq = SturmSequence::new(&g);
    let mut cur = iv.clone();
    loop {
        if seq.count(&cur.lo, &cur.hi) == 0 {
            return sign_at_rational(f, &cur.hi);
        }
        match cur.bisect() {
            Ok(next) => cur = next,
            Err(q) => return sign_at_rational(f, &q),
        }
    }
}

fn cmp_roots(mut a: IsolatingInterval, mut b: IsolatingInterval) -> Ordering {
    // shared root: gcd of the witnesses has a root in the overlap
    let lo = if a.lo > b.lo {
        a.lo.clone()
    } else {
        b.lo.clone()
    };
    let hi = if a.hi < b.hi {
        a.hi.clone()
    } else {
        b.hi.clone()
    };
    if lo < hi {
        let g = a.poly.gcd(&b.poly);
        if !g.is_constant() {
            let seq = SturmSequence::new(&g);
            // roots of g inside (lo, hi) are roots of both witnesses in both intervals
            let at_hi = if sign_at_rational(&g, &hi) == Sign::Zero {
                1
            } else {
                0
            };
            if seq.count(&lo, &hi) > at_hi {
                return Ordering::Equal;
            }
        }
    }
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        match a.bisect() {
            Ok(n) => a = n,
            Err(q) => return RealAlgebraic::Root(b).cmp_rational(&q).reverse(),
        }
        match b.bisect() {
            Ok(n) => b = n,
            Err(q) => return RealAlgebraic::Root(a).cmp_rational(&q),
        }
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Rational(q) => write!(f, "{}", crate::scalar::format_rational(q)),
            RealAlgebraic::Quadratic(x) => write!(f, "{x}"),
            RealAlgebraic::Root(iv) => write!(
                f,
                "root of {} in ({}, {}) ~ {:.12}",
                iv.poly,
                crate::scalar::format_rational(&iv.lo),
                crate::scalar::format_rational(&iv.hi),
                self.to_f64()
            ),
        }
    }
}

/// All distinct real roots of `f`, in increasing order, in the simplest exact form
/// available: rational, quadratic irrational (when a real quadratic factor over ℚ
/// splits off), else an isolating interval.
pub fn exact_real_roots(f: &QPoly) -> Result<Vec<RealAlgebraic>> {
    let ivs = isolate_real_roots(f, None)?;
    if ivs.is_empty() {
        return Ok(Vec::new());
    }
    let g = ivs[0].poly.clone();
    let lead = g.lead().abs();
    let bound = crate::sturm::root_bound(&g);
    // enough precision that rounding L·(α+β) and L·αβ is exact
    let width = Rational::one()
        / (Rational::from_integer(BigInt::from(64)) * &lead * (&bound + Rational::one()));
    let mut out: Vec<Option<RealAlgebraic>> = vec![None; ivs.len()];
    let mut mids = Vec::with_capacity(ivs.len());
    for (i, iv) in ivs.iter().enumerate() {
        match iv.refine_to(&width) {
            Ok(r) => {
                let m = (&r.lo + &r.hi) / two();
                let cand = (&m * &lead).round() / &lead;
                if sign_at_rational(&g, &cand) == Sign::Zero && cand > iv.lo && cand <= iv.hi {
                    out[i] = Some(RealAlgebraic::Rational(cand));
                }
                mids.push(m);
            }
            Err(q) => {
                out[i] = Some(RealAlgebraic::Rational(q.clone()));
                mids.push(q);
            }
        }
    }
    for i in 0..ivs.len() {
        if out[i].is_some() {
            continue;
        }
        for j in i + 1..ivs.len() {
            if out[j].is_some() || out[i].is_some() {
                continue;
            }
            let s = (&(&mids[i] + &mids[j]) * &lead).round() / &lead;
            let p = (&(&mids[i] * &mids[j]) * &lead).round() / &lead;
            let quad = QPoly::new(vec![p.clone(), -s.clone(), Rational::one()]);
            if !quad.divides(&g) {
                continue;
            }
            let disc = &s * &s - Rational::from_integer(BigInt::from(4)) * &p;
            if !disc.is_positive() {
                continue;
            }
            // √disc = k·√D / den
            let num = disc.numer() * disc.denom();
            let Some((k, dd)) = square_free_split(&num) else {
                continue;
            };
            let Ok(d) = i64::try_from(&dd) else {
                continue;
            };
            if d == 1 {
                continue;
            }
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let coef = Rational::new(k, disc.denom().clone()) * &half;
            let centre = &s * &half;
            let lo_root =
                QuadExt::new(centre.clone(), -coef.clone(), d).expect("squarefree radicand");
            let hi_root = QuadExt::new(centre, coef, d).expect("squarefree radicand");
            out[i] = Some(RealAlgebraic::Quadratic(lo_root));
            out[j] = Some(RealAlgebraic::Quadratic(hi_root));
        }
    }
    Ok(ivs
        .into_iter()
        .zip(out)
        .map(|(iv, x)| x.unwrap_or_else(|| RealAlgebraic::from_interval(iv)))
        .collect())
}
