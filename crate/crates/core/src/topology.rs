//! Real locus of the quadric surface fibration over P¹(ℝ) and of the discriminant
//! quartic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::bundle::{degenerate_fiber_form, fiber_form, FormTriple};
use crate::error::{Error, Result};
use crate::multipoly::TernaryForm;
use crate::poly::UniPoly;
use crate::quadform::{gram_matrix, signature, BinaryForm, Signature};
use crate::real_algebraic::{exact_real_roots, RealAlgebraic};
use crate::scalar::{format_rational, rational_to_f64, Rational, Sign};

type QPoly = UniPoly<Rational>;

/// A point of P¹(ℝ) in the affine coordinate `t = t₀/t₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamPoint {
    Finite(RealAlgebraic),
    Infinity,
}

impl ParamPoint {
    pub fn to_f64(&self) -> f64 {
        match self {
            ParamPoint::Finite(x) => x.to_f64(),
            ParamPoint::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPoint::Finite(x) => write!(f, "{x}"),
            ParamPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A rational point `(t₀ : t₁)` of P¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub t0: Rational,
    pub t1: Rational,
}

impl Sample {
    pub fn affine(t: Rational) -> Self {
        Sample {
            t0: t,
            t1: Rational::one(),
        }
    }

    pub fn infinity() -> Self {
        Sample {
            t0: Rational::one(),
            t1: Rational::zero(),
        }
    }

    /// `t₀/t₁` as an exact string, or `inf`.
    pub fn exact_string(&self) -> String {
        if self.t1.is_zero() {
            "inf".to_string()
        } else {
            format_rational(&(&self.t0 / &self.t1))
        }
    }

    pub fn approx(&self) -> f64 {
        if self.t1.is_zero() {
            f64::INFINITY
        } else {
            rational_to_f64(&(&self.t0 / &self.t1))
        }
    }
}

/// An open arc of P¹(ℝ) between consecutive roots, traversed in increasing `t`
/// (through ∞ when `start > end`). `None` endpoints mean there are no roots at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSegment {
    pub start: Option<ParamPoint>,
    pub end: Option<ParamPoint>,
    pub sample: Sample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePartition {
    /// Roots in circular order starting from the smallest finite one; ∞ last.
    pub roots: Vec<ParamPoint>,
    /// `segments[i]` runs from `roots[i]` to `roots[i + 1]` (cyclically).
    pub segments: Vec<CircleSegment>,
}

fn rational_above(x: &RealAlgebraic) -> Rational {
    x.enclosure(&Rational::one()).1.floor() + Rational::one()
}

fn rational_below(x: &RealAlgebraic) -> Rational {
    x.enclosure(&Rational::one()).0.ceil() - Rational::one()
}

/// Splits P¹(ℝ) at the real roots of a nonzero binary form.
pub fn circle_partition(form: &BinaryForm<Rational>) -> Result<CirclePartition> {
    if form.is_zero() {
        return Err(Error::domain("the zero binary form vanishes on all of P1"));
    }
    let finite = if form.poly.is_constant() {
        Vec::new()
    } else {
        exact_real_roots(&form.poly)?
    };
    let at_inf = form.multiplicity_at_infinity() > 0;
    let mut roots: Vec<ParamPoint> = finite.iter().cloned().map(ParamPoint::Finite).collect();
    if at_inf {
        roots.push(ParamPoint::Infinity);
    }
    let k = roots.len();
    if k == 0 {
        let segments = vec![CircleSegment {
            start: None,
            end: None,
            sample: Sample::affine(Rational::zero()),
        }];
        return Ok(CirclePartition { roots, segments });
    }
    let mut segments = Vec::with_capacity(k);
    for i in 0..k {
        let a = &roots[i];
        let b = &roots[(i + 1) % k];
        let sample = match (a, b) {
            (ParamPoint::Finite(x), ParamPoint::Finite(y)) if i + 1 < k => {
                Sample::affine(x.rational_between(y))
            }
            // wrap-around arc through ∞, which is not a root
            (ParamPoint::Finite(_), ParamPoint::Finite(_)) => Sample::infinity(),
            (ParamPoint::Finite(x), ParamPoint::Infinity) => Sample::affine(rational_above(x)),
            (ParamPoint::Infinity, ParamPoint::Finite(y)) => Sample::affine(rational_below(y)),
            (ParamPoint::Infinity, ParamPoint::Infinity) => Sample::affine(Rational::zero()),
        };
        segments.push(CircleSegment {
            start: Some(a.clone()),
            end: Some(b.clone()),
            sample,
        });
    }
    Ok(CirclePartition { roots, segments })
}

/// Signature of the 4×4 fibre form at a rational point of P¹.
pub fn fiber_signature(triple: &FormTriple, t: &Sample) -> Result<Signature> {
    Ok(signature(&fiber_form(triple, &t.t0, &t.t1)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSegment {
    pub segment: CircleSegment,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureProfile {
    pub sextic: BinaryForm<Rational>,
    pub roots: Vec<ParamPoint>,
    pub segments: Vec<ProfileSegment>,
}

pub fn signature_profile(triple: &FormTriple) -> Result<SignatureProfile> {
    let sextic = degenerate_fiber_form(triple)?;
    if !sextic.poly.is_squarefree() || sextic.multiplicity_at_infinity() > 1 {
        return Err(Error::degenerate(format!(
            "degenerate-fibre sextic {} has a repeated factor",
            sextic.poly
        )));
    }
    let part = circle_partition(&sextic)?;
    let segments = part
        .segments
        .into_iter()
        .map(|segment| {
            let signature = fiber_signature(triple, &segment.sample)?;
            Ok(ProfileSegment { segment, signature })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignatureProfile {
        sextic,
        roots: part.roots,
        segments,
    })
}

/// A closed arc of P¹(ℝ), or the whole circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arc {
    Circle,
    Closed { start: ParamPoint, end: ParamPoint },
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Circle => write!(f, "P1(R)"),
            Arc::Closed { start, end } => write!(f, "[{start}, {end}]"),
        }
    }
}

/// Indices of maximal cyclic runs of selected segments, as `(first, last)` pairs.
pub(crate) fn maximal_runs(selected: &[bool]) -> Option<Vec<(usize, usize)>> {
    let n = selected.len();
    if selected.iter().all(|&s| s) {
        return None;
    }
    let start = (0..n)
        .find(|&i| !selected[i])
        .expect("some segment unselected");
    let mut runs = Vec::new();
    let mut cur: Option<usize> = None;
    for k in 1..=n {
        let i = (start + k) % n;
        match (selected[i], cur) {
            (true, None) => cur = Some(i),
            (false, Some(first)) => {
                runs.push((first, (i + n - 1) % n));
                cur = None;
            }
            _ => {}
        }
    }
    if let Some(first) = cur {
        runs.push((first, (start + n - 1) % n));
    }
    runs.sort_unstable();
    Some(runs)
}

fn arcs_where(profile: &SignatureProfile, pred: impl Fn(&Signature) -> bool) -> Vec<Arc> {
    let selected: Vec<bool> = profile
        .segments
        .iter()
        .map(|s| pred(&s.signature))
        .collect();
    match maximal_runs(&selected) {
        None => vec![Arc::Circle],
        Some(runs) => runs
            .into_iter()
            .map(|(a, b)| Arc::Closed {
                start: profile.segments[a]
                    .segment
                    .start
                    .clone()
                    .expect("bounded run"),
                end: profile.segments[b]
                    .segment
                    .end
                    .clone()
                    .expect("bounded run"),
            })
            .collect(),
    }
}

/// Whether `x` lies on the closed arc.
pub fn arc_contains(arc: &Arc, x: &ParamPoint) -> bool {
    let Arc::Closed { start, end } = arc else {
        return true;
    };
    match (start, end, x) {
        (_, _, ParamPoint::Infinity) => {
            matches!(start, ParamPoint::Infinity)
                || matches!(end, ParamPoint::Infinity)
                || matches!((start, end), (ParamPoint::Finite(a), ParamPoint::Finite(b)) if a > b)
        }
        (ParamPoint::Finite(a), ParamPoint::Finite(b), ParamPoint::Finite(t)) => {
            if a <= b {
                a <= t && t <= b
            } else {
                t >= a || t <= b
            }
        }
        (ParamPoint::Finite(a), ParamPoint::Infinity, ParamPoint::Finite(t)) => t >= a,
        (ParamPoint::Infinity, ParamPoint::Finite(b), ParamPoint::Finite(t)) => t <= b,
        (ParamPoint::Infinity, ParamPoint::Infinity, ParamPoint::Finite(_)) => false,
    }
}

/// Closed parameter arcs over which the fibres have real points.
pub fn real_point_intervals(profile: &SignatureProfile) -> Vec<Arc> {
    arcs_where(profile, |s| s.is_indefinite())
}

/// Closed parameter arcs over which the fibres contain real lines.
pub fn real_line_intervals(profile: &SignatureProfile) -> Vec<Arc> {
    arcs_where(profile, |s| *s == Signature::new(2, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Empty,
    Disconnected(usize),
    ThreeSphere,
    ConnectedOther,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Empty => write!(f, "empty"),
            Classification::Disconnected(n) => write!(f, "disconnected({n})"),
            Classification::ThreeSphere => write!(f, "three-sphere"),
            Classification::ConnectedOther => write!(f, "connected-other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTopologyReport {
    pub profile: SignatureProfile,
    pub real_point_intervals: Vec<Arc>,
    pub real_line_intervals: Vec<Arc>,
    pub component_count: usize,
    pub classification: Classification,
    pub pi1_surjective: bool,
}

fn is_sphere_signature(s: &Signature) -> bool {
    *s == Signature::new(1, 3) || *s == Signature::new(3, 1)
}

pub fn classify_real_locus(triple: &FormTriple) -> Result<RealTopologyReport> {
    let profile = signature_profile(triple)?;
    let points = real_point_intervals(&profile);
    let lines = real_line_intervals(&profile);
    let selected: Vec<bool> = profile
        .segments
        .iter()
        .map(|s| s.signature.is_indefinite())
        .collect();
    let pi1_surjective = points == vec![Arc::Circle];
    let classification = match maximal_runs(&selected) {
        None => Classification::ConnectedOther,
        Some(runs) if runs.is_empty() => Classification::Empty,
        Some(runs) if runs.len() >= 2 => Classification::Disconnected(runs.len()),
        Some(runs) => {
            // fibres shrink to points at both ends; roots are simple since the sextic is squarefree
            let (a, b) = runs[0];
            if is_sphere_signature(&profile.segments[a].signature)
                && is_sphere_signature(&profile.segments[b].signature)
            {
                Classification::ThreeSphere
            } else {
                Classification::ConnectedOther
            }
        }
    };
    Ok(RealTopologyReport {
        component_count: points.len(),
        profile,
        real_point_intervals: points,
        real_line_intervals: lines,
        classification,
        pi1_surjective,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverRealPoints {
    /// `Q₁` (index 0) or `Q₃` (index 2) is negative definite.
    EmptyCertified {
        definite_form: usize,
    },
    Inconclusive,
}

/// `r² = Q₁` with `Q₁` negative definite forces `u = v = w = r = 0`, then `s² = 0`.
pub fn cover_real_points_empty(triple: &FormTriple) -> CoverRealPoints {
    let m = triple.matrices();
    for i in [0, 2] {
        if signature(&m[i]) == Signature::new(0, 3) {
            return CoverRealPoints::EmptyCertified { definite_form: i };
        }
    }
    CoverRealPoints::Inconclusive
}

/// CSV rows `t_exact,t_approx,p,q`, one per profile segment.
pub fn profile_csv(profile: &SignatureProfile) -> String {
    let mut out = String::from("t_exact,t_approx,p,q\n");
    for s in &profile.segments {
        let t = &s.segment.sample;
        out.push_str(&format!(
            "{},{:.12},{},{}\n",
            t.exact_string(),
            t.approx(),
            s.signature.p,
            s.signature.q
        ));
    }
    out
}

/// One maximal arc of the quotient conic inside the closed positive triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvalArc {
    /// Which of `a = 0`, `b = 0`, `c = 0` the arc touches.
    pub touches: [bool; 3],
    /// A rational point of the arc, in conic coordinates.
    pub sample: [Rational; 3],
    /// Components of the real quartic lying over the arc.
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvalReport {
    pub components: usize,
    /// `G(a, b, c)` with `F(u, v, w) = G(u², v², w²)`.
    pub conic: TernaryForm,
    /// `definite-conic`, or `conic-parametrisation` with the rational base point.
    pub method: String,
    pub base_point: Option<[Rational; 3]>,
    pub arcs: Vec<OvalArc>,
}

/// The quadratic form `G` with `F(u, v, w) = G(u², v², w²)`.
pub fn quotient_conic(f: &TernaryForm) -> Result<TernaryForm> {
    let mut g = TernaryForm::zero();
    for (e, c) in f.terms() {
        if e.iter().any(|x| x % 2 == 1) {
            return Err(Error::domain(
                "the quartic has an odd exponent; it is not a form in u^2, v^2, w^2",
            ));
        }
        g.add_term([e[0] / 2, e[1] / 2, e[2] / 2], c.clone());
    }
    Ok(g)
}

/// `λ` with `target = λ·(conic ∘ map)`, if the substitution is proportional.
pub fn conic_quotient_scalar(
    target: &TernaryForm,
    conic: &TernaryForm,
    map: &[TernaryForm; 3],
) -> Option<Rational> {
    conic.substitute(map).proportionality(target)
}

fn find_rational_point(g: &TernaryForm, bound: i64) -> Option<[Rational; 3]> {
    let l = crate::scalar::lcm_of_denominators(g.terms().map(|(_, c)| c));
    let coef = |e: [u32; 3]| -> Option<i128> {
        let c = g.coeff(&e) * Rational::from_integer(l.clone());
        c.to_integer().to_i128()
    };
    let m = [
        [coef([2, 0, 0])?, coef([1, 1, 0])?, coef([1, 0, 1])?],
        [coef([0, 2, 0])?, coef([0, 1, 1])?, coef([0, 0, 2])?],
    ];
    let val = |a: i128, b: i128, c: i128| {
        m[0][0] * a * a
            + m[0][1] * a * b
            + m[0][2] * a * c
            + m[1][0] * b * b
            + m[1][1] * b * c
            + m[1][2] * c * c
    };
    for h in 1..=bound as i128 {
        for a in -h..=h {
            for b in -h..=h {
                for c in [h, -h] {
                    if val(a, b, c) == 0 {
                        return Some([a, b, c].map(|x| Rational::from_integer(BigInt::from(x))));
                    }
                }
                if b.abs() == h || a.abs() == h {
                    for c in -h + 1..h {
                        if val(a, b, c) == 0 && (a, b, c) != (0, 0, 0) {
                            return Some(
                                [a, b, c].map(|x| Rational::from_integer(BigInt::from(x))),
                            );
                        }
                    }
                }
            }
        }
    }
    None
}

/// Number of sign classes `(±u : ±v : ±w)` over an arc touching the given edges:
/// `8 / |⟨reflections in touched coordinates, −1⟩|`.
fn lifted_components(touches: &[bool; 3]) -> usize {
    match touches.iter().filter(|&&t| t).count() {
        0 => 4,
        1 => 2,
        _ => 1,
    }
}

/// Connected components of the real locus of a quartic in `u², v², w²`: its real
/// points are the preimage of the quotient conic `G = 0` inside the closed triangle
/// `a, b, c ≥ 0`. The conic is parametrised from a rational point, split at its
/// crossings with the triangle's edges, and each maximal arc inside the triangle
/// lifts to `8 / |⟨σᵢ (touched edges), −1⟩|` components.
pub fn diagonal_quartic_oval_report(f: &TernaryForm) -> Result<OvalReport> {
    if !f.is_homogeneous_of_degree(4) {
        return Err(Error::domain("expected a homogeneous quartic"));
    }
    let g = quotient_conic(f)?;
    let gm = gram_matrix(&g)?;
    let sig = signature(&gm);
    if sig.rank() == 3 && !sig.is_indefinite() {
        return Ok(OvalReport {
            components: 0,
            conic: g,
            method: "definite-conic".into(),
            base_point: None,
            arcs: Vec::new(),
        });
    }
    if sig.rank() < 3 {
        return Err(Error::Unsupported(
            "the quotient conic is degenerate".into(),
        ));
    }
    let p = find_rational_point(&g, 60).ok_or_else(|| {
        Error::Unsupported("no small rational point on the quotient conic".into())
    })?;
    // complement basis e, f of p; x(m₀, m₁) = G(D,D)·p − 2B(p,D)·D with D = m₀e + m₁f
    let pivot = (0..3).find(|&i| !p[i].is_zero()).expect("nonzero point");
    let basis: Vec<[Rational; 3]> = (0..3)
        .filter(|&i| i != pivot)
        .map(|i| {
            let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
            e[i] = Rational::one();
            e
        })
        .collect();
    let (e, fv) = (&basis[0], &basis[1]);
    // D = m·e + f with m = m₀/m₁; coordinates of x as quadratics in m
    let lin = |v: &[Rational; 3], w: &[Rational; 3]| -> [QPoly; 3] {
        std::array::from_fn(|i| QPoly::new(vec![w[i].clone(), v[i].clone()]))
    };
    let d = lin(e, fv);
    let mvec = gm.matrix();
    let mut gdd = QPoly::zero();
    let mut bpd = QPoly::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mij = mvec.get(i, j).clone();
            gdd = gdd + (d[i].clone() * d[j].clone()).scale(&mij);
            bpd = bpd + d[j].scale(&(&mij * &p[i]));
        }
    }
    let two = Rational::from_integer(BigInt::from(2));
    let coords: [QPoly; 3] =
        std::array::from_fn(|i| gdd.scale(&p[i]) - (bpd.clone() * d[i].clone()).scale(&two));
    let forms: Vec<BinaryForm<Rational>> = coords
        .iter()
        .map(|c| BinaryForm::new(2, c.clone()))
        .collect();
    let product = forms
        .iter()
        .fold(QPoly::one(), |acc, b| acc * b.poly.clone());
    let part = circle_partition(&BinaryForm::new(6, product))?;
    let eval_at_sample =
        |s: &Sample| -> [Rational; 3] { std::array::from_fn(|i| forms[i].eval(&s.t0, &s.t1)) };
    let sign_at_root = |r: &ParamPoint, i: usize| -> Sign {
        match r {
            ParamPoint::Finite(x) => x.sign_of(&forms[i].poly),
            ParamPoint::Infinity => Sign::of_rational(&forms[i].coeff(2)),
        }
    };
    let in_triangle =
        |signs: [Sign; 3]| !signs.contains(&Sign::Negative) || !signs.contains(&Sign::Positive);
    // cyclic sequence root₀, seg₀, root₁, seg₁, ...
    let mut elems: Vec<(bool, [bool; 3], [Rational; 3])> = Vec::new();
    if part.roots.is_empty() {
        let x = eval_at_sample(&part.segments[0].sample);
        let signs = x.clone().map(|c| Sign::of_rational(&c));
        elems.push((in_triangle(signs), [false; 3], x));
    }
    for (k, r) in part.roots.iter().enumerate() {
        let signs: [Sign; 3] = std::array::from_fn(|i| sign_at_root(r, i));
        let touches = signs.map(|s| s == Sign::Zero);
        let x = match r {
            ParamPoint::Finite(RealAlgebraic::Rational(q)) => {
                eval_at_sample(&Sample::affine(q.clone()))
            }
            ParamPoint::Infinity => eval_at_sample(&Sample::infinity()),
            _ => eval_at_sample(&part.segments[k].sample),
        };
        elems.push((in_triangle(signs), touches, x));
        let x = eval_at_sample(&part.segments[k].sample);
        let signs = x.clone().map(|c| Sign::of_rational(&c));
        elems.push((in_triangle(signs), [false; 3], x));
    }
    let selected: Vec<bool> = elems.iter().map(|e| e.0).collect();
    let mut arcs = Vec::new();
    let mut collect = |idx: Vec<usize>| {
        let mut touches = [false; 3];
        for &i in &idx {
            for j in 0..3 {
                touches[j] |= elems[i].1[j];
            }
        }
        // prefer a segment sample, whose coordinates are all nonzero
        let rep = idx
            .iter()
            .copied()
            .find(|&i| elems[i].1 == [false; 3])
            .unwrap_or(idx[0]);
        arcs.push(OvalArc {
            touches,
            sample: elems[rep].2.clone(),
            components: lifted_components(&touches),
        });
    };
    match maximal_runs(&selected) {
        None => collect((0..elems.len()).collect()),
        Some(runs) => {
            for (a, b) in runs {
                let n = elems.len();
                let len = (b + n - a) % n + 1;
                collect((0..len).map(|k| (a + k) % n).collect());
            }
        }
    }
    Ok(OvalReport {
        components: arcs.iter().map(|a| a.components).sum(),
        conic: g,
        method: "conic-parametrisation".into(),
        base_point: Some(p),
        arcs,
    })
}

impl fmt::Display for OvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} component(s) via {}", self.components, self.method)
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
    fn circle_partition_wraps_through_infinity() {
        let b = BinaryForm::new(2, QPoly::from_i64s(&[-1, 0, 1]));
        let part = circle_partition(&b).unwrap();
        assert_eq!(part.roots.len(), 2);
        assert_eq!(part.segments[1].sample, Sample::infinity());
        // t₀·t₁: roots 0 and ∞
        let b = BinaryForm::new(2, QPoly::from_i64s(&[0, 1]));
        let part = circle_partition(&b).unwrap();
        assert_eq!(
            part.roots,
            vec![
                ParamPoint::Finite(RealAlgebraic::int(0)),
                ParamPoint::Infinity
            ]
        );
        assert!(part.segments[0].sample.t0 > int(0));
        assert!(part.segments[1].sample.t0 < int(0));
    }

    #[test]
    fn definite_pencil_has_one_segment() {
        let id = [("u^2", "1"), ("v^2", "1"), ("w^2", "1")];
        let t = FormTriple::from_keys(
            "id",
            [&id, &[], &[("u^2", "1"), ("v^2", "2"), ("w^2", "3")]],
        )
        .unwrap();
        let p = signature_profile(&t).unwrap();
        assert!(p.roots.is_empty());
        assert_eq!(p.segments.len(), 1);
        assert_eq!(p.segments[0].signature, Signature::new(3, 1));
        let r = classify_real_locus(&t).unwrap();
        assert!(r.pi1_surjective);
        assert_eq!(r.classification, Classification::ConnectedOther);
    }

    #[test]
    fn oval_counts() {
        let fermat = form(&[("u^4", "1"), ("v^4", "1"), ("w^4", "1")]);
        assert_eq!(diagonal_quartic_oval_report(&fermat).unwrap().components, 0);
        let one = form(&[("u^4", "1"), ("v^4", "1"), ("w^4", "-1")]);
        assert_eq!(diagonal_quartic_oval_report(&one).unwrap().components, 1);
        // u⁴ + (v² − 2w²)² = w⁴: one oval for each sign of v
        let two = form(&[("u^4", "1"), ("v^4", "1"), ("v^2*w^2", "-4"), ("w^4", "3")]);
        assert_eq!(diagonal_quartic_oval_report(&two).unwrap().components, 2);
        assert!(diagonal_quartic_oval_report(&form(&[("u^3*v", "1")])).is_err());
    }
}
