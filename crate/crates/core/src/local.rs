//! Local solvability of `y² = f(t)` over ℝ and over ℚ_p for odd p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bundle::Genus2Curve;
use crate::error::{Error, Result};
use crate::poly::{discriminant_resultant, UniPoly};
use crate::real_algebraic::{exact_real_roots, RealAlgebraic};
use crate::scalar::{is_prime_u64, legendre, valuation_int, Rational, Sign};
use crate::sturm::root_bound;

type QPoly = UniPoly<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "R"),
            Place::Prime(p) => write!(f, "Q{p}"),
        }
    }
}

/// Which affine chart a p-adic witness lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `t ∈ ℤ_p`, equation `y² = f(t)`.
    T,
    /// `t = 1/s` with `s ∈ pℤ_p`, equation `y² = s⁶·f(1/s)`.
    InverseT,
}

impl Chart {
    pub fn as_str(&self) -> &'static str {
        match self {
            Chart::T => "t",
            Chart::InverseT => "1/t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalWitness {
    /// A real Weierstrass point `f(t) = 0`.
    RealRoot(RealAlgebraic),
    /// A rational `t` with `f(t) > 0`.
    RealPositive(Rational),
    /// A rational chart coordinate `x` with `h(x) = p^v·u`, `v` even and `u` a nonzero
    /// square mod p, hence a square in ℚ_p. `v = None` means `h(x) = 0`.
    PAdic {
        chart: Chart,
        x: Rational,
        valuation: Option<u32>,
        unit_residue: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solvability {
    Solvable(LocalWitness),
    Insolvable,
    Unknown,
}

impl Solvability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Solvability::Solvable(_) => "solvable",
            Solvability::Insolvable => "insolvable",
            Solvability::Unknown => "unknown",
        }
    }
}

/// A closed branch of the residue tree: every chart value congruent to `residue`
/// mod `p^level` is `p^valuation` times a unit that is a non-square (or the
/// valuation is odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueLeaf {
    pub chart: Chart,
    pub residue: BigInt,
    pub level: u32,
    pub valuation: u32,
    pub unit_residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub place: Place,
    pub verdict: Solvability,
    /// Deepest residue level explored.
    pub depth_used: u32,
    /// Level at which every branch is guaranteed to close.
    pub required_depth: u32,
    pub leaves: Vec<ResidueLeaf>,
}

pub fn weierstrass_real(curve: &Genus2Curve) -> Result<Vec<RealAlgebraic>> {
    exact_real_roots(&curve.f)
}

pub fn real_points_exist(curve: &Genus2Curve) -> Result<LocalVerdict> {
    let f = &curve.f;
    let roots = weierstrass_real(curve)?;
    let verdict = if let Some(r) = roots.first() {
        Solvability::Solvable(LocalWitness::RealRoot(r.clone()))
    } else if f.lead().is_positive() {
        Solvability::Solvable(LocalWitness::RealPositive(root_bound(f)))
    } else {
        Solvability::Insolvable
    };
    Ok(LocalVerdict {
        place: Place::Real,
        verdict,
        depth_used: 0,
        required_depth: 0,
        leaves: Vec::new(),
    })
}

/// Integer polynomial `L²·f` with `L` the lcm of the denominators.
fn integral_model(f: &QPoly) -> Vec<BigInt> {
    let l = crate::scalar::lcm_of_denominators(f.coeffs());
    let s = Rational::from_integer(&l * &l);
    f.coeffs().iter().map(|c| (c * &s).to_integer()).collect()
}

fn eval_int(h: &[BigInt], x: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Coefficients of `h(a + m·z)` in `z`.
fn shift_scale(h: &[BigInt], a: &BigInt, m: &BigInt) -> Vec<BigInt> {
    // Horner in the polynomial ring: h(a + m z) = (((c_n)(a + m z) + c_{n-1})(a + m z) + ...)
    let mut acc: Vec<BigInt> = Vec::new();
    for c in h.iter().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, x) in acc.iter().enumerate() {
            next[i] += x * a;
            next[i + 1] += x * m;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    u64::try_from(&r).expect("residue fits")
}

struct Search<'a> {
    p: u64,
    pb: BigInt,
    budget: u32,
    chart: Chart,
    h: &'a [BigInt],
    depth_used: u32,
    exhausted: bool,
    leaves: Vec<ResidueLeaf>,
}

impl Search<'_> {
    /// Explores the class `a + p^k·ℤ_p`.
    fn explore(&mut self, a: &BigInt, k: u32) -> Option<LocalWitness> {
        self.depth_used = self.depth_used.max(k);
        let pk = self.pb.pow(k);
        let g = shift_scale(self.h, a, &pk);
        let v = g
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| valuation_int(c, self.p))
            .min()?;
        let unit_poly: Vec<u64> = g
            .iter()
            .map(|c| mod_p(&(c / self.pb.pow(v)), self.p))
            .collect();
        for z in 0..self.p {
            let val = unit_poly.iter().rev().fold(0u64, |acc, &c| {
                ((acc as u128 * z as u128 + c as u128) % self.p as u128) as u64
            });
            let x = a + &pk * BigInt::from(z);
            if val != 0 {
                if v % 2 == 0 && legendre(&BigInt::from(val), self.p) == 1 {
                    return Some(self.witness(&x));
                }
                self.leaves.push(ResidueLeaf {
                    chart: self.chart,
                    residue: x,
                    level: k + 1,
                    valuation: v,
                    unit_residue: val,
                });
                continue;
            }
            if eval_int(self.h, &x).is_zero() {
                return Some(self.witness(&x));
            }
            if k + 1 > self.budget {
                self.exhausted = true;
                continue;
            }
            if let Some(w) = self.explore(&x, k + 1) {
                return Some(w);
            }
        }
        None
    }

    fn witness(&self, x: &BigInt) -> LocalWitness {
        let value = eval_int(self.h, x);
        let (valuation, unit_residue) = if value.is_zero() {
            (None, 0)
        } else {
            let v = valuation_int(&value, self.p);
            (Some(v), mod_p(&(&value / self.pb.pow(v)), self.p))
        };
        LocalWitness::PAdic {
            chart: self.chart,
            x: Rational::from_integer(x.clone()),
            valuation,
            unit_residue,
        }
    }
}

/// Chart polynomials: `f` itself and the degree-6 reversal `s⁶·f(1/s)`, both integral.
fn chart_polys(f: &QPoly) -> (Vec<BigInt>, Vec<BigInt>) {
    let h = integral_model(f);
    let mut rev = h.clone();
    rev.resize(7, BigInt::zero());
    rev.reverse();
    (h, rev)
}

/// `v_p(disc f) + 2` for the integral model.
pub fn required_depth(f: &QPoly, p: u64) -> Result<u32> {
    let h = integral_model(f);
    let hq = QPoly::new(h.into_iter().map(Rational::from_integer).collect());
    let disc = discriminant_resultant(&hq)?;
    if disc.is_zero() {
        return Err(Error::degenerate("the curve polynomial is not squarefree"));
    }
    let lead = hq.lead().to_integer();
    Ok(valuation_int(&disc.to_integer(), p) + valuation_int(&lead, p) + 2)
}

/// Residue-tree search for a ℚ_p-point on `y² = f(t)`.
pub fn qp_points_exist(curve: &Genus2Curve, p: u64, depth_budget: u32) -> Result<LocalVerdict> {
    if p == 2 {
        return Err(Error::Unsupported(
            "the place p = 2 is not implemented".into(),
        ));
    }
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let required = required_depth(&curve.f, p)?;
    let budget = depth_budget.min(required.max(1));
    let (h, rev) = chart_polys(&curve.f);
    let pb = BigInt::from(p);
    let mut depth_used = 0;
    let mut exhausted = false;
    let mut leaves = Vec::new();
    for (chart, poly, start) in [(Chart::T, &h, 0u32), (Chart::InverseT, &rev, 1u32)] {
        let mut s = Search {
            p,
            pb: pb.clone(),
            budget,
            chart,
            h: poly,
            depth_used: 0,
            exhausted: false,
            leaves: Vec::new(),
        };
        let found = s.explore(&BigInt::zero(), start);
        depth_used = depth_used.max(s.depth_used);
        exhausted |= s.exhausted;
        leaves.extend(s.leaves);
        if let Some(w) = found {
            return Ok(LocalVerdict {
                place: Place::Prime(p),
                verdict: Solvability::Solvable(w),
                depth_used,
                required_depth: required,
                leaves: Vec::new(),
            });
        }
    }
    let verdict = if exhausted {
        Solvability::Unknown
    } else {
        Solvability::Insolvable
    };
    Ok(LocalVerdict {
        place: Place::Prime(p),
        verdict,
        depth_used,
        required_depth: required,
        leaves,
    })
}

/// Re-checks a solvable verdict from its witness alone.
pub fn verify_witness(curve: &Genus2Curve, verdict: &LocalVerdict) -> bool {
    let Solvability::Solvable(w) = &verdict.verdict else {
        return false;
    };
    match (w, verdict.place) {
        (LocalWitness::RealRoot(r), Place::Real) => r.sign_of(&curve.f) == Sign::Zero,
        (LocalWitness::RealPositive(t), Place::Real) => curve.f.eval(t).is_positive(),
        (
            LocalWitness::PAdic {
                chart,
                x,
                valuation,
                unit_residue,
            },
            Place::Prime(p),
        ) => {
            let (h, rev) = chart_polys(&curve.f);
            let poly = match chart {
                Chart::T => h,
                Chart::InverseT => rev,
            };
            if !x.is_integer() {
                return false;
            }
            let xi = x.to_integer();
            if *chart == Chart::InverseT && !(&xi % BigInt::from(p)).is_zero() {
                return false;
            }
            let value = eval_int(&poly, &xi);
            match valuation {
                None => value.is_zero(),
                Some(v) => {
                    if value.is_zero() {
                        return false;
                    }
                    let got = valuation_int(&value, p);
                    let u = mod_p(&(&value / BigInt::from(p).pow(got)), p);
                    got == *v
                        && v % 2 == 0
                        && u == *unit_residue
                        && legendre(&BigInt::from(u), p) == 1
                }
            }
        }
        _ => false,
    }
}

/// Brute-force decision over residues mod `p^k` in both charts: `Some(true)` if a
/// class is certainly square, `Some(false)` if every class is certainly a non-square,
/// `None` when some class has valuation ≥ k − 1 and no class certifies.
pub fn exhaustive_residue_oracle(f: &QPoly, p: u64, k: u32) -> Option<bool> {
    let (h, rev) = chart_polys(f);
    let pk = BigInt::from(p).pow(k);
    let mut ambiguous = false;
    for (poly, step) in [(&h, 1u64), (&rev, p)] {
        let mut x = BigInt::zero();
        while x < pk {
            let value = eval_int(poly, &x);
            let v = if value.is_zero() {
                k
            } else {
                valuation_int(&value, p)
            };
            if v + 1 < k {
                let u = mod_p(&(&value / BigInt::from(p).pow(v)), p);
                if v % 2 == 0 && legendre(&BigInt::from(u), p) == 1 {
                    return Some(true);
                }
            } else {
                ambiguous = true;
            }
            x += step;
        }
    }
    if ambiguous {
        None
    } else {
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn curve(cs: &[i64]) -> Genus2Curve {
        Genus2Curve::new(QPoly::from_i64s(cs), "test").unwrap()
    }

    #[test]
    fn real_examples() {
        let c = curve(&[-1, 0, 0, 0, 0, 0, -1]);
        assert_eq!(
            real_points_exist(&c).unwrap().verdict,
            Solvability::Insolvable
        );
        let c = curve(&[1, 0, 0, 0, 0, 1]);
        let v = real_points_exist(&c).unwrap();
        assert!(verify_witness(&c, &v));
        let c = curve(&[1, 0, 0, 0, 0, 0, 1]);
        assert!(verify_witness(&c, &real_points_exist(&c).unwrap()));
        let none = QPoly::from_i64s(&[1, 0, 1])
            * QPoly::from_i64s(&[2, 0, 1])
            * QPoly::from_i64s(&[3, 0, 1]);
        assert!(weierstrass_real(&Genus2Curve::new(none, "x").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn three_adic_examples() {
        let c = curve(&[1, 0, 0, 0, 0, 0, 1]);
        let v = qp_points_exist(&c, 3, 20).unwrap();
        assert!(matches!(
            v.verdict,
            Solvability::Solvable(LocalWitness::PAdic {
                chart: Chart::T,
                ..
            })
        ));
        assert!(verify_witness(&c, &v));
        assert!(matches!(
            qp_points_exist(&c, 2, 20),
            Err(Error::Unsupported(_))
        ));
        let diag = QPoly::from_i64s(&[7, -6, 1])
            * QPoly::from_i64s(&[23, -10, 1])
            * QPoly::from_i64s(&[4, 0, 1]);
        let c = Genus2Curve::new(diag.scale(&int(3)), "diag").unwrap();
        let v = qp_points_exist(&c, 3, 20).unwrap();
        assert_eq!(v.verdict, Solvability::Insolvable);
        assert!(!v.leaves.is_empty());
        assert_eq!(exhaustive_residue_oracle(&c.f, 3, 6), Some(false));
    }

    #[test]
    fn shift_scale_matches_substitution() {
        let h: Vec<BigInt> = [3, -1, 2].iter().map(|&x| BigInt::from(x)).collect();
        let g = shift_scale(&h, &BigInt::from(5), &BigInt::from(9));
        for z in -3..4 {
            let z = BigInt::from(z);
            assert_eq!(
                eval_int(&g, &z),
                eval_int(&h, &(BigInt::from(5) + BigInt::from(9) * &z))
            );
        }
    }
}
