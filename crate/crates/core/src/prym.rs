//! Divisor certificates on the cover and Prym-scheme component labels.

use std::fmt;

use num_traits::{One, Zero};

use crate::bundle::CoverPresentation;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multipoly::TernaryForm;
use crate::poly::UniPoly;
use crate::quadext::QuadExt;
use crate::quadform::{restrict_poly_to_line, LineParam};
use crate::scalar::Rational;

/// A point `[u:v:w:r:s]` of P⁴ over ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldPoint {
    pub coords: [QuadExt; 5],
}

impl QuadFieldPoint {
    pub fn new(coords: [QuadExt; 5]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("all coordinates vanish"));
        }
        let ds: Vec<i64> = coords
            .iter()
            .filter_map(|c| if c.is_rational() { None } else { c.radicand() })
            .collect();
        if ds.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::domain(
                "coordinates live in different quadratic fields",
            ));
        }
        Ok(QuadFieldPoint { coords })
    }

    pub fn parse(coords: &[&str]) -> Result<Self> {
        if coords.len() != 5 {
            return Err(Error::domain("a point of P4 has five coordinates"));
        }
        let cs = coords
            .iter()
            .map(|s| QuadExt::parse(s))
            .collect::<Result<Vec<_>>>()?;
        QuadFieldPoint::new(cs.try_into().expect("five coordinates"))
    }

    pub fn field(&self) -> Option<i64> {
        self.coords
            .iter()
            .find(|c| !c.is_rational())
            .and_then(|c| c.radicand())
    }

    /// Scaled so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero point")
            .clone();
        QuadFieldPoint {
            coords: self.coords.clone().map(|c| c / lead.clone()),
        }
    }

    pub fn same_point(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn conj(&self) -> Self {
        QuadFieldPoint {
            coords: self.coords.clone().map(|c| c.conj()),
        }
    }

    pub fn image(&self) -> [QuadExt; 3] {
        [
            self.coords[0].clone(),
            self.coords[1].clone(),
            self.coords[2].clone(),
        ]
    }

    pub fn scaled(&self, c: &QuadExt) -> Self {
        QuadFieldPoint {
            coords: self.coords.clone().map(|x| x * c.clone()),
        }
    }
}

impl fmt::Display for QuadFieldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(" : "))
    }
}

/// The deck involution `[u:v:w:r:s] ↦ [u:v:w:−r:−s]`.
pub fn apply_involution(p: &QuadFieldPoint) -> QuadFieldPoint {
    let mut c = p.coords.clone();
    c[3] = -c[3].clone();
    c[4] = -c[4].clone();
    QuadFieldPoint { coords: c }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCertificate {
    pub points: Vec<QuadFieldPoint>,
    /// Squarefree radicand of the field of definition.
    pub d: i64,
    /// Linear form `a·u + b·v + c·w`.
    pub line: [Rational; 3],
}

impl DivisorCertificate {
    pub fn new(points: Vec<QuadFieldPoint>, d: i64, line: [Rational; 3]) -> Result<Self> {
        if points.len() != 4 {
            return Err(Error::domain("a certificate has exactly four points"));
        }
        if points.iter().any(|p| p.field().is_some_and(|e| e != d)) {
            return Err(Error::domain(format!(
                "a certificate point is not defined over Q(sqrt({d}))"
            )));
        }
        if line.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("the claimed line is the zero form"));
        }
        Ok(DivisorCertificate { points, d, line })
    }

    /// Flips the points whose index bit is set in `mask`.
    pub fn flipped(&self, mask: u32) -> Self {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if mask >> i & 1 == 1 {
                    apply_involution(p)
                } else {
                    p.clone()
                }
            })
            .collect();
        DivisorCertificate {
            points,
            d: self.d,
            line: self.line.clone(),
        }
    }

    pub fn coordinate_matrix(&self) -> Matrix<QuadExt> {
        Matrix::from_rows(self.points.iter().map(|p| p.coords.to_vec()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub on_cover: bool,
    /// `(Q₁ − r², Q₂ − rs, Q₃ − s²)` at each point.
    pub residues: Vec<[QuadExt; 3]>,
}

pub fn verify_on_cover(cert: &DivisorCertificate, pres: &CoverPresentation) -> CoverCheck {
    let residues: Vec<[QuadExt; 3]> = cert
        .points
        .iter()
        .map(|p| {
            std::array::from_fn(|i| {
                pres.generators[i].eval_with(&p.coords, |c| QuadExt::rational(c.clone()))
            })
        })
        .collect();
    let on_cover = residues.iter().all(|r| r.iter().all(|x| x.is_zero()));
    CoverCheck { on_cover, residues }
}

fn multiset_equal(a: &[QuadFieldPoint], b: &[QuadFieldPoint]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for p in a {
        let np = p.normalized();
        match (0..b.len()).find(|&j| !used[j] && b[j].normalized() == np) {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Size of the multiset intersection.
pub fn multiset_overlap(a: &[QuadFieldPoint], b: &[QuadFieldPoint]) -> usize {
    let mut used = vec![false; b.len()];
    let mut n = 0;
    for p in a {
        let np = p.normalized();
        if let Some(j) = (0..b.len()).find(|&j| !used[j] && b[j].normalized() == np) {
            used[j] = true;
            n += 1;
        }
    }
    n
}

pub fn verify_galois_stable(cert: &DivisorCertificate) -> bool {
    let conj: Vec<QuadFieldPoint> = cert.points.iter().map(|p| p.conj()).collect();
    multiset_equal(&cert.points, &conj)
}

/// Parameter `(x : y)` of a point `P = x·p + y·q` on the parametrised line.
fn line_parameter(line: &LineParam<QuadExt>, pt: &[QuadExt; 3]) -> Option<(QuadExt, QuadExt)> {
    for i in 0..3 {
        for j in i + 1..3 {
            let det = line.p[i].clone() * line.q[j].clone() - line.p[j].clone() * line.q[i].clone();
            if !det.is_zero() {
                let x = (pt[i].clone() * line.q[j].clone() - pt[j].clone() * line.q[i].clone())
                    / det.clone();
                let y =
                    (line.p[i].clone() * pt[j].clone() - line.p[j].clone() * pt[i].clone()) / det;
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardCheck {
    pub matches: bool,
    pub on_line: bool,
    /// Restriction of the quartic to the line, coefficient `i` at `xⁱ·y⁴⁻ⁱ`.
    pub restricted: Vec<Rational>,
    pub reason: String,
}

/// Compares the images of the certificate points, with multiplicity, against the
/// intersection divisor of `V(F)` with the claimed line.
pub fn pushforward_line_match(
    cert: &DivisorCertificate,
    f: &TernaryForm,
) -> Result<PushforwardCheck> {
    let line_q = LineParam::from_linear_form(cert.line.clone())?;
    let restricted = restrict_poly_to_line(f, 4, &line_q);
    if restricted.is_zero() {
        return Err(Error::degenerate(
            "the claimed line lies inside the quartic",
        ));
    }
    let coeffs: Vec<Rational> = (0..=4).map(|i| restricted.coeff(i)).collect();
    let fail = |on_line: bool, reason: &str| PushforwardCheck {
        matches: false,
        on_line,
        restricted: coeffs.clone(),
        reason: reason.to_string(),
    };
    let lift = |c: &Rational| QuadExt::rational(c.clone());
    let line_k = LineParam {
        coeffs: line_q.coeffs.clone().map(|c| lift(&c)),
        p: line_q.p.clone().map(|c| lift(&c)),
        q: line_q.q.clone().map(|c| lift(&c)),
    };
    let mut product = UniPoly::<QuadExt>::one();
    for pt in &cert.points {
        let img = pt.image();
        if img.iter().all(|c| c.is_zero()) {
            return Ok(fail(false, "a point maps to the vertex [0:0:0]"));
        }
        let on = (0..3).fold(QuadExt::zero(), |acc, i| {
            acc + line_k.coeffs[i].clone() * img[i].clone()
        });
        if !on.is_zero() {
            return Ok(fail(false, "an image point is off the claimed line"));
        }
        let (x, y) = line_parameter(&line_k, &img).expect("spanning parametrisation");
        // linear factor y·X − x·Y vanishing at (x : y)
        product = product * UniPoly::new(vec![-x, y]);
    }
    let target: Vec<QuadExt> = coeffs.iter().map(lift).collect();
    let got: Vec<QuadExt> = (0..=4).map(|i| product.coeff(i)).collect();
    let proportional = (0..=4).all(|i| {
        (0..=4).all(|j| target[i].clone() * got[j].clone() == target[j].clone() * got[i].clone())
    });
    if !proportional {
        return Ok(fail(
            true,
            "image multiset differs from the intersection divisor",
        ));
    }
    Ok(PushforwardCheck {
        matches: true,
        on_line: true,
        restricted: coeffs,
        reason: "match".into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentLabel {
    /// Span of the support is a projective 2-plane.
    S1,
    /// Span of the support is a projective 3-plane.
    S1Tilde,
}

impl ComponentLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentLabel::S1 => "S1",
            ComponentLabel::S1Tilde => "S1-tilde",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub label: ComponentLabel,
    pub rank: usize,
    /// Determinant of the 4×4 minor on the `(u, v, r, s)` columns.
    pub minor_uvrs: QuadExt,
    /// First nonzero 4×4 minor in column-lexicographic order, if any.
    pub nonzero_minor: Option<([usize; 4], QuadExt)>,
}

pub fn span_rank_verdict(cert: &DivisorCertificate) -> Result<ComponentVerdict> {
    let m = cert.coordinate_matrix();
    let rank = m.rank();
    if rank <= 2 {
        return Err(Error::degenerate(format!(
            "collinear certificate: span rank {rank}"
        )));
    }
    let minor_uvrs = m.select_columns(&[0, 1, 3, 4]).det_bareiss();
    let mut nonzero_minor = None;
    'outer: for skip in (0..5).rev() {
        let cols: Vec<usize> = (0..5).filter(|&c| c != skip).collect();
        let det = m.select_columns(&cols).det_bareiss();
        if !det.is_zero() {
            nonzero_minor = Some(([cols[0], cols[1], cols[2], cols[3]], det));
            break 'outer;
        }
    }
    let label = if rank == 3 {
        ComponentLabel::S1
    } else {
        ComponentLabel::S1Tilde
    };
    Ok(ComponentVerdict {
        label,
        rank,
        minor_uvrs,
        nonzero_minor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityVerdict {
    SameComponent,
    DifferentComponent,
}

/// `e = |supp A ∩ supp B|` with multiplicity; same component iff `e ≡ 4 (mod 2)`.
pub fn parity_compare(
    a: &DivisorCertificate,
    b: &DivisorCertificate,
) -> Result<(ParityVerdict, usize)> {
    let ia: Vec<QuadFieldPoint> = a.points.iter().map(image_point).collect();
    let ib: Vec<QuadFieldPoint> = b.points.iter().map(image_point).collect();
    if !multiset_equal(&ia, &ib) {
        return Err(Error::domain(
            "the two certificates push forward to different divisors",
        ));
    }
    let e = multiset_overlap(&a.points, &b.points);
    let v = if e.is_multiple_of(2) {
        ParityVerdict::SameComponent
    } else {
        ParityVerdict::DifferentComponent
    };
    Ok((v, e))
}

fn image_point(p: &QuadFieldPoint) -> QuadFieldPoint {
    let z = QuadExt::zero();
    let [u, v, w] = p.image();
    QuadFieldPoint {
        coords: [u, v, w, z.clone(), z],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn published_points() -> Vec<QuadFieldPoint> {
        [
            ["-sqrt(-1)", "2", "0", "4-3*sqrt(-1)", "52-21*sqrt(-1)"],
            ["sqrt(-1)", "2", "0", "4+3*sqrt(-1)", "52+21*sqrt(-1)"],
            ["1-sqrt(-1)", "4", "0", "1+7*sqrt(-1)", "-41-143*sqrt(-1)"],
            ["1+sqrt(-1)", "4", "0", "1-7*sqrt(-1)", "-41+143*sqrt(-1)"],
        ]
        .iter()
        .map(|p| QuadFieldPoint::parse(p).unwrap())
        .collect()
    }

    fn cert() -> DivisorCertificate {
        DivisorCertificate::new(published_points(), -1, [int(0), int(0), int(1)]).unwrap()
    }

    #[test]
    fn involution_examples() {
        let p = QuadFieldPoint::parse(&["0", "0", "1", "1", "1"]).unwrap();
        let q = apply_involution(&p);
        assert_eq!(
            q,
            QuadFieldPoint::parse(&["0", "0", "1", "-1", "-1"]).unwrap()
        );
        assert_eq!(apply_involution(&q), p);
    }

    #[test]
    fn galois_stability() {
        let c = cert();
        assert!(verify_galois_stable(&c));
        let mut broken = c.clone();
        broken.points[1] = broken.points[0].clone();
        assert!(!verify_galois_stable(&broken));
        let rational: Vec<QuadFieldPoint> = (1..=4)
            .map(|k| QuadFieldPoint::parse(&[&k.to_string(), "1", "0", "0", "0"]).unwrap())
            .collect();
        assert!(verify_galois_stable(
            &DivisorCertificate::new(rational, -1, [int(0), int(0), int(1)]).unwrap()
        ));
    }

    #[test]
    fn determinant_of_published_certificate() {
        let v = span_rank_verdict(&cert()).unwrap();
        assert_eq!(v.rank, 4);
        assert_eq!(v.label, ComponentLabel::S1Tilde);
        assert_eq!(v.minor_uvrs, QuadExt::rational(int(-23040)));
        let mut degenerate = cert();
        degenerate.points[1] = degenerate.points[0].clone();
        let (rank, det) = degenerate
            .coordinate_matrix()
            .select_columns(&[0, 1, 3, 4])
            .rank_and_det();
        assert_eq!(rank, 3);
        assert!(det.unwrap().is_zero());
    }

    #[test]
    fn parity_examples() {
        let c = cert();
        assert_eq!(
            parity_compare(&c, &c).unwrap(),
            (ParityVerdict::SameComponent, 4)
        );
        assert_eq!(
            parity_compare(&c, &c.flipped(0b1111)).unwrap(),
            (ParityVerdict::SameComponent, 0)
        );
        assert_eq!(
            parity_compare(&c, &c.flipped(0b0100)).unwrap(),
            (ParityVerdict::DifferentComponent, 3)
        );
    }
}
