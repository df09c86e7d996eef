//! Lines avoiding the real discriminant transversely, pencils of such lines, and
//! tangency certificates against the branch conics of the fibres.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bundle::{degenerate_fiber_form, discriminant_quartic, FormTriple};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multipoly::TernaryForm;
use crate::poly::{resultant, UniPoly};
use crate::quadform::{restrict_poly_to_line, BinaryForm, LineParam, Signature};
use crate::real_algebraic::{exact_real_roots, RealAlgebraic};
use crate::scalar::{int, simplest_between, Rational, Sign};
use crate::sturm::SturmSequence;
use crate::topology::{
    arc_contains, circle_partition, classify_real_locus, fiber_signature, maximal_runs, Arc,
    CirclePartition, ParamPoint, Sample,
};

type QPoly = UniPoly<Rational>;

/// A line of P² with a fixed rational parametrisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjLine {
    pub param: LineParam<Rational>,
}

impl ProjLine {
    pub fn new(coeffs: [Rational; 3]) -> Result<Self> {
        Ok(ProjLine {
            param: LineParam::from_linear_form(coeffs)?,
        })
    }

    pub fn from_i64s(c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(int))
    }

    pub fn through(p: [Rational; 3], q: [Rational; 3]) -> Result<Self> {
        Ok(ProjLine {
            param: LineParam::through(p, q)?,
        })
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.param.coeffs
    }

    /// The same line with its parametrisation points swapped.
    pub fn swapped(&self) -> Self {
        let mut param = self.param.clone();
        std::mem::swap(&mut param.p, &mut param.q);
        ProjLine { param }
    }
}

fn real_root_count(f: &QPoly) -> usize {
    if f.is_constant() {
        0
    } else {
        SturmSequence::new(f).count_all()
    }
}

/// Whether every real intersection of the line with `V(F)` has multiplicity at least two.
pub fn sigma_membership(line: &ProjLine, f: &TernaryForm) -> Result<bool> {
    let g = restrict_poly_to_line(f, 4, &line.param);
    if g.is_zero() {
        return Err(Error::degenerate("the line lies inside the quartic"));
    }
    if g.multiplicity_at_infinity() == 1 {
        return Ok(false);
    }
    if g.poly.is_constant() {
        return Ok(true);
    }
    let simple = g
        .poly
        .squarefree_decompose()?
        .into_iter()
        .find(|(_, m)| *m == 1);
    Ok(simple.is_none_or(|(g1, _)| real_root_count(&g1) == 0))
}

/// Discriminant of the pencil restricted to a line, as a binary form in `(t₀ : t₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyPolynomial {
    /// `4(B² − AC)` for the restriction `A·x² + 2B·xy + C·y²`.
    pub raw: BinaryForm<Rational>,
    /// Product of the distinct factors of `raw`, with its leading coefficient.
    pub squarefree: BinaryForm<Rational>,
    /// Repeated factors of `raw` with multiplicities; the factor `t₁` stands for a root at ∞.
    pub removed_squares: Vec<(QPoly, u32)>,
    pub quadratic: bool,
}

impl TangencyPolynomial {
    pub fn is_identically_zero(&self) -> bool {
        self.raw.is_zero()
    }
}

pub fn tangency_polynomial(triple: &FormTriple, line: &ProjLine) -> Result<TangencyPolynomial> {
    let [m1, m2, m3] = triple.matrices();
    let (p, q) = (&line.param.p, &line.param.q);
    let two = int(2);
    let coeff = |f: &dyn Fn(&crate::quadform::SymQuadraticForm<Rational>) -> Rational| {
        QPoly::new(vec![f(&m3), f(&m2) * &two, f(&m1)])
    };
    let a = coeff(&|m| m.eval(p));
    let b = coeff(&|m| m.polar(p, q));
    let c = coeff(&|m| m.eval(q));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::degenerate(
            "the pencil restricts to zero on the line",
        ));
    }
    let raw_poly = (b.clone() * b - a * c).scale(&int(4));
    let raw = BinaryForm::new(4, raw_poly);
    if raw.is_zero() {
        return Ok(TangencyPolynomial {
            squarefree: raw.clone(),
            raw,
            removed_squares: Vec::new(),
            quadratic: false,
        });
    }
    let inf = raw.multiplicity_at_infinity();
    let mut removed = Vec::new();
    let mut sqf = QPoly::constant(raw.poly.lead());
    if !raw.poly.is_constant() {
        for (factor, m) in raw.poly.squarefree_decompose()? {
            if m >= 2 {
                removed.push((factor.clone(), m));
            }
            sqf = sqf * factor;
        }
    }
    if inf >= 2 {
        removed.push((QPoly::constant(Rational::one()), inf as u32));
    }
    let sqf_degree = sqf.deg0() + usize::from(inf > 0);
    Ok(TangencyPolynomial {
        raw,
        squarefree: BinaryForm::new(sqf_degree, sqf),
        removed_squares: removed,
        quadratic: sqf_degree == 2,
    })
}

/// Lines through a base point, `(λ : μ) ↦ λ·gen1 + μ·gen2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilThroughPoint {
    pub base: [Rational; 3],
    pub gen1: [Rational; 3],
    pub gen2: [Rational; 3],
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl PencilThroughPoint {
    pub fn new(base: [Rational; 3], gen1: [Rational; 3], gen2: [Rational; 3]) -> Result<Self> {
        if base.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("the zero vector is not a point"));
        }
        if !dot(&base, &gen1).is_zero() || !dot(&base, &gen2).is_zero() {
            return Err(Error::domain(
                "pencil generators must pass through the base point",
            ));
        }
        if cross(&gen1, &gen2).iter().all(|c| c.is_zero()) {
            return Err(Error::domain("pencil generators are dependent"));
        }
        Ok(PencilThroughPoint { base, gen1, gen2 })
    }

    /// The pencil through `base` with `line` as its member at `(1 : 0)`.
    pub fn containing(base: [Rational; 3], line: [Rational; 3]) -> Result<Self> {
        let k = (0..3)
            .find(|&i| !line[i].is_zero())
            .ok_or_else(|| Error::domain("zero line"))?;
        let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
        e[k] = Rational::one();
        Self::new(base.clone(), line, cross(&base, &e))
    }

    pub fn member_coeffs(&self, s: &Sample) -> [Rational; 3] {
        std::array::from_fn(|i| &s.t0 * &self.gen1[i] + &s.t1 * &self.gen2[i])
    }

    pub fn member(&self, s: &Sample) -> Result<ProjLine> {
        ProjLine::new(self.member_coeffs(s))
    }

    /// Points `e1, e2` with `genᵢ(eⱼ) = δᵢⱼ` and `base·eⱼ = 0`.
    fn dual_points(&self) -> ([Rational; 3], [Rational; 3]) {
        let m = Matrix::from_rows(vec![
            self.gen1.to_vec(),
            self.gen2.to_vec(),
            self.base.to_vec(),
        ]);
        let solve = |rhs: [Rational; 3]| -> [Rational; 3] {
            let aug = Matrix::from_fn(3, 4, |i, j| {
                if j < 3 {
                    m.get(i, j).clone()
                } else {
                    rhs[i].clone()
                }
            });
            // the kernel of [M | rhs] is spanned by (x, −1) since M is invertible
            let ker = aug.nullspace();
            let v = &ker[0];
            std::array::from_fn(|i| -&v[i] / &v[3])
        };
        let one = Rational::one;
        let zero = Rational::zero;
        (
            solve([one(), zero(), zero()]),
            solve([zero(), one(), zero()]),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSigma {
    /// Degree-12 form in `(λ : μ)` vanishing where a member meets `V(F)` with multiplicity ≥ 2.
    pub discriminant: BinaryForm<Rational>,
    pub partition: CirclePartition,
    /// Membership in Σ of each partition segment, decided at its sample.
    pub membership: Vec<bool>,
    pub sigma_arcs: Vec<Arc>,
    /// Discriminant roots across which membership changes.
    pub boundary: Vec<ParamPoint>,
}

pub fn pencil_boundary_params(pencil: &PencilThroughPoint, f: &TernaryForm) -> Result<PencilSigma> {
    if f.eval(&pencil.base).is_zero() {
        return Err(Error::domain("the base point lies on the quartic"));
    }
    let (e1, e2) = pencil.dual_points();
    // member (m : 1) contains base and e1 − m·e2; g(x) = F(x·base + e1 − m·e2)
    let xs: [UniPoly<QPoly>; 3] = std::array::from_fn(|i| {
        UniPoly::new(vec![
            QPoly::new(vec![e1[i].clone(), -e2[i].clone()]),
            QPoly::constant(pencil.base[i].clone()),
        ])
    });
    let g = f.eval_with(&xs, |c| UniPoly::constant(QPoly::constant(c.clone())));
    let d = resultant(&g, &g.derivative())?;
    if d.is_zero() {
        return Err(Error::degenerate(
            "every member of the pencil meets the quartic non-reducedly",
        ));
    }
    let discriminant = BinaryForm::new(12, d);
    let partition = circle_partition(&discriminant)?;
    let membership = partition
        .segments
        .iter()
        .map(|s| sigma_membership(&pencil.member(&s.sample)?, f))
        .collect::<Result<Vec<_>>>()?;
    let (sigma_arcs, boundary) = match maximal_runs(&membership) {
        None => (vec![Arc::Circle], Vec::new()),
        Some(runs) => {
            let mut arcs = Vec::new();
            let mut boundary = Vec::new();
            for (a, b) in runs {
                let start = partition.segments[a].start.clone().expect("bounded run");
                let end = partition.segments[b].end.clone().expect("bounded run");
                for x in [&start, &end] {
                    if !boundary.contains(x) {
                        boundary.push(x.clone());
                    }
                }
                arcs.push(Arc::Closed { start, end });
            }
            (arcs, boundary)
        }
    };
    Ok(PencilSigma {
        discriminant,
        partition,
        membership,
        sigma_arcs,
        boundary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Boundary,
    Interior,
}

impl RootLocation {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootLocation::Boundary => "boundary",
            RootLocation::Interior => "interior",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyCertificate {
    pub line: ProjLine,
    pub tangency: TangencyPolynomial,
    pub interval: Arc,
    pub root: ParamPoint,
    /// Rational bracket of a finite root, `lo ≤ root ≤ hi`.
    pub bracket: Option<(Rational, Rational)>,
    pub location: RootLocation,
    pub sample: Sample,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFailure {
    pub line: ProjLine,
    pub reason: String,
    /// Sign of `T` at each endpoint of the interval.
    pub endpoint_signs: Vec<(ParamPoint, Sign)>,
    /// Sign of `T` at the critical points of `T` inside the interval.
    pub critical_signs: Vec<(ParamPoint, Sign)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineOutcome {
    Certified(Box<TangencyCertificate>),
    Failed(Box<LineFailure>),
}

impl LineOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, LineOutcome::Certified(_))
    }
}

fn sign_at(t: &BinaryForm<Rational>, x: &ParamPoint) -> Sign {
    match x {
        ParamPoint::Finite(r) => r.sign_of(&t.poly),
        ParamPoint::Infinity => Sign::of_rational(&t.coeff(t.degree)),
    }
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

fn sample_of(x: &Rational) -> ParamPoint {
    ParamPoint::Finite(RealAlgebraic::rational(x.clone()))
}

/// A rational point near `root`, inside `interval`, off the sextic and with a (2,2) fibre.
fn signature_sample(
    triple: &FormTriple,
    sextic: &BinaryForm<Rational>,
    interval: &Arc,
    root: &ParamPoint,
) -> Result<Option<(Rational, Signature, Option<(Rational, Rational)>)>> {
    let target = Signature::new(2, 2);
    for k in 1..=64u32 {
        let w = pow2(k).recip();
        let (candidates, bracket) = match root {
            ParamPoint::Finite(r) => {
                let (lo, hi) = r.enclosure(&w);
                (
                    vec![lo.clone(), hi.clone(), &lo - &w, &hi + &w],
                    Some((lo, hi)),
                )
            }
            ParamPoint::Infinity => (vec![pow2(k), -pow2(k)], None),
        };
        for q in candidates {
            if !arc_contains(interval, &sample_of(&q)) || sextic.poly.eval(&q).is_zero() {
                continue;
            }
            let sig = fiber_signature(triple, &Sample::affine(q.clone()))?;
            if sig == target {
                return Ok(Some((q, sig, bracket)));
            }
        }
    }
    Ok(None)
}

fn is_endpoint(interval: &Arc, x: &ParamPoint) -> bool {
    matches!(interval, Arc::Closed { start, end } if start == x || end == x)
}

fn failure(
    line: &ProjLine,
    t: Option<&TangencyPolynomial>,
    interval: &Arc,
    reason: String,
) -> Result<LineOutcome> {
    let mut endpoint_signs = Vec::new();
    let mut critical_signs = Vec::new();
    if let Some(t) = t.filter(|t| !t.raw.is_zero()) {
        if let Arc::Closed { start, end } = interval {
            endpoint_signs = vec![
                (start.clone(), sign_at(&t.raw, start)),
                (end.clone(), sign_at(&t.raw, end)),
            ];
        }
        let dt = t.raw.poly.derivative();
        if !dt.is_constant() {
            for r in exact_real_roots(&dt)? {
                let x = ParamPoint::Finite(r);
                if arc_contains(interval, &x) {
                    critical_signs.push((x.clone(), sign_at(&t.raw, &x)));
                }
            }
        }
    }
    Ok(LineOutcome::Failed(Box::new(LineFailure {
        line: line.clone(),
        reason,
        endpoint_signs,
        critical_signs,
    })))
}

fn certify_with(
    triple: &FormTriple,
    sextic: &BinaryForm<Rational>,
    line: &ProjLine,
    interval: &Arc,
) -> Result<LineOutcome> {
    let t = match tangency_polynomial(triple, line) {
        Ok(t) => t,
        Err(e) => return failure(line, None, interval, e.to_string()),
    };
    let roots: Vec<ParamPoint> = if t.raw.is_zero() {
        // every fibre is tangent: any parameter of the interval is a root
        match interval {
            Arc::Circle => vec![sample_of(&Rational::zero())],
            Arc::Closed { start, end } => vec![start.clone(), end.clone()],
        }
    } else {
        let mut roots: Vec<ParamPoint> = if t.raw.poly.is_constant() {
            Vec::new()
        } else {
            exact_real_roots(&t.raw.poly)?
                .into_iter()
                .map(ParamPoint::Finite)
                .collect()
        };
        if t.raw.multiplicity_at_infinity() > 0 {
            roots.push(ParamPoint::Infinity);
        }
        roots.retain(|r| arc_contains(interval, r));
        // interior roots first
        roots.sort_by_key(|r| is_endpoint(interval, r));
        roots
    };
    if roots.is_empty() {
        return failure(
            line,
            Some(&t),
            interval,
            "no root of the tangency polynomial in the interval".into(),
        );
    }
    for root in roots {
        if let Some((q, signature, bracket)) = signature_sample(triple, sextic, interval, &root)? {
            let (root, bracket) = if t.raw.is_zero() {
                (sample_of(&q), Some((q.clone(), q.clone())))
            } else {
                (root, bracket)
            };
            let location = if is_endpoint(interval, &root) {
                RootLocation::Boundary
            } else {
                RootLocation::Interior
            };
            return Ok(LineOutcome::Certified(Box::new(TangencyCertificate {
                line: line.clone(),
                tangency: t,
                interval: interval.clone(),
                root,
                bracket,
                location,
                sample: Sample::affine(q),
                signature,
            })));
        }
    }
    failure(
        line,
        Some(&t),
        interval,
        "no (2,2) fibre next to any root in the interval".into(),
    )
}

pub fn line_covered_certificate(
    triple: &FormTriple,
    line: &ProjLine,
    interval: &Arc,
) -> Result<LineOutcome> {
    let sextic = degenerate_fiber_form(triple)?;
    certify_with(triple, &sextic, line, interval)
}

/// Re-checks a certificate from its recorded data.
pub fn verify_tangency_certificate(
    triple: &FormTriple,
    cert: &TangencyCertificate,
) -> Result<bool> {
    let t = tangency_polynomial(triple, &cert.line)?;
    if t != cert.tangency {
        return Ok(false);
    }
    let vanishes = t.raw.is_zero() || sign_at(&t.raw, &cert.root) == Sign::Zero;
    let bracketed = match (&cert.root, &cert.bracket) {
        (ParamPoint::Finite(r), Some((lo, hi))) => {
            let r = r.clone();
            RealAlgebraic::rational(lo.clone()) <= r && r <= RealAlgebraic::rational(hi.clone())
        }
        (ParamPoint::Infinity, None) => true,
        _ => false,
    };
    let sample_inside =
        cert.sample.t1.is_one() && arc_contains(&cert.interval, &sample_of(&cert.sample.t0));
    let sig = fiber_signature(triple, &cert.sample)?;
    Ok(vanishes
        && bracketed
        && sample_inside
        && arc_contains(&cert.interval, &cert.root)
        && sig == Signature::new(2, 2)
        && sig == cert.signature)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditGrid {
    pub base_points: usize,
    pub lines: usize,
    pub base_line: [Rational; 3],
}

impl Default for AuditGrid {
    fn default() -> Self {
        AuditGrid {
            base_points: 20,
            lines: 10,
            base_line: [Rational::zero(), Rational::zero(), Rational::one()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineAudit {
    pub param: Sample,
    pub outcome: LineOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePointAudit {
    pub point: [Rational; 3],
    pub boundary: Vec<ParamPoint>,
    pub sigma_arcs: Vec<Arc>,
    pub lines: Vec<LineAudit>,
    /// Sampled parameters whose line turned out not to lie in Σ.
    pub skipped: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub base_line: [Rational; 3],
    pub base_line_in_sigma: bool,
    pub real_line_intervals: Vec<Arc>,
    pub base_points: Vec<BasePointAudit>,
    pub certified: usize,
    pub failed: usize,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.failed == 0
    }
}

/// Simplest rational point `(t₀ : t₁)` whose angle `atan(t₀/t₁)` lies within `δ` of `θ`.
fn angle_sample(theta: f64, delta: f64) -> Sample {
    let theta = (theta + PI / 2.0).rem_euclid(PI) - PI / 2.0;
    let to_q = |x: f64| Rational::from_float(x).expect("finite angle");
    if theta.abs() <= PI / 4.0 {
        let (lo, hi) = ((theta - delta).tan(), (theta + delta).tan());
        Sample::affine(simplest_between(&to_q(lo), &to_q(hi)))
    } else {
        // near ∞ use the reciprocal coordinate
        let c = PI / 2.0 - theta.abs();
        let (lo, hi) = ((c - delta).tan(), (c + delta).tan());
        let r = simplest_between(&to_q(lo), &to_q(hi));
        let sign = if theta > 0.0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        if r.is_zero() {
            Sample::infinity()
        } else {
            Sample { t0: sign, t1: r }
        }
    }
}

fn angle_of(x: &ParamPoint) -> f64 {
    match x {
        ParamPoint::Finite(r) => r.to_f64().atan(),
        ParamPoint::Infinity => PI / 2.0,
    }
}

/// Parameters spread over an arc of the pencil, including two next to its ends.
fn arc_samples(arc: &Arc, n: usize) -> Vec<Sample> {
    if n == 0 {
        return Vec::new();
    }
    let (a, len, open_ends) = match arc {
        Arc::Circle => (-PI / 2.0, PI, false),
        Arc::Closed { start, end } => {
            let (a, b) = (angle_of(start), angle_of(end));
            let len = (b - a).rem_euclid(PI);
            (a, if len == 0.0 { PI } else { len }, true)
        }
    };
    let eps = 1e-7 * len;
    let spread = len / (4.0 * n as f64);
    (0..n)
        .map(|j| {
            if !open_ends {
                angle_sample(a + len * j as f64 / n as f64, spread)
            } else if n == 1 {
                angle_sample(a + len / 2.0, spread)
            } else if j == 0 {
                angle_sample(a + eps, eps / 2.0)
            } else if j == n - 1 {
                angle_sample(a + len - eps, eps / 2.0)
            } else {
                angle_sample(a + len * j as f64 / (n - 1) as f64, spread)
            }
        })
        .collect()
}

fn audit_base_point(
    triple: &FormTriple,
    f: &TernaryForm,
    sextic: &BinaryForm<Rational>,
    intervals: &[Arc],
    base_line: &[Rational; 3],
    point: [Rational; 3],
    lines: usize,
) -> BasePointAudit {
    let mut out = BasePointAudit {
        point: point.clone(),
        boundary: Vec::new(),
        sigma_arcs: Vec::new(),
        lines: Vec::new(),
        skipped: 0,
        error: None,
    };
    let run = |out: &mut BasePointAudit| -> Result<()> {
        let pencil = PencilThroughPoint::containing(point.clone(), base_line.clone())?;
        let sigma = pencil_boundary_params(&pencil, f)?;
        out.boundary = sigma.boundary.clone();
        out.sigma_arcs = sigma.sigma_arcs.clone();
        let k = sigma.sigma_arcs.len().max(1);
        let mut params: Vec<Sample> = Vec::new();
        for (i, arc) in sigma.sigma_arcs.iter().enumerate() {
            let share = lines / k + usize::from(i < lines % k);
            for s in arc_samples(arc, share) {
                if !params.contains(&s) {
                    params.push(s);
                }
            }
        }
        for param in params {
            let line = pencil.member(&param)?;
            if !sigma_membership(&line, f)? {
                out.skipped += 1;
                continue;
            }
            let mut outcome = None;
            for interval in intervals {
                let o = certify_with(triple, sextic, &line, interval)?;
                let done = o.is_certified();
                if outcome.is_none() || done {
                    outcome = Some(o);
                }
                if done {
                    break;
                }
            }
            out.lines.push(LineAudit {
                param,
                outcome: outcome.expect("at least one interval"),
            });
        }
        Ok(())
    };
    if let Err(e) = run(&mut out) {
        out.error = Some(e.to_string());
    }
    out
}

/// Certifies sampled lines of Σ in pencils through points of a base line.
pub fn surjectivity_audit(triple: &FormTriple, grid: &AuditGrid) -> Result<AuditReport> {
    let topo = classify_real_locus(triple)?;
    let intervals = topo.real_line_intervals;
    if intervals.is_empty() {
        return Err(Error::Precondition(
            "no fibre over P1(R) contains a real line".into(),
        ));
    }
    let f = discriminant_quartic(triple);
    let sextic = degenerate_fiber_form(triple)?;
    let base = ProjLine::new(grid.base_line.clone())?;
    let base_line_in_sigma = sigma_membership(&base, &f)?;
    let points: Vec<[Rational; 3]> = (0..grid.base_points)
        .map(|j| {
            let s = angle_sample(
                PI * j as f64 / grid.base_points as f64,
                PI / (8.0 * grid.base_points as f64),
            );
            base.param.point(&s.t0, &s.t1)
        })
        .collect();
    let base_points: Vec<BasePointAudit> = points
        .into_par_iter()
        .map(|p| {
            audit_base_point(
                triple,
                &f,
                &sextic,
                &intervals,
                &grid.base_line,
                p,
                grid.lines,
            )
        })
        .collect();
    let mut certified = 0;
    let mut failed = 0;
    for bp in &base_points {
        for l in &bp.lines {
            if l.outcome.is_certified() {
                certified += 1;
            } else {
                failed += 1;
            }
        }
        if bp.error.is_some() {
            failed += 1;
        }
    }
    Ok(AuditReport {
        base_line: grid.base_line.clone(),
        base_line_in_sigma,
        real_line_intervals: intervals,
        base_points,
        certified,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn diag_triple() -> FormTriple {
        FormTriple::from_keys(
            "diag",
            [
                &[("u^2", "-1"), ("v^2", "-1"), ("w^2", "-3")],
                &[("u^2", "3"), ("v^2", "5")],
                &[("u^2", "-7"), ("v^2", "-23"), ("w^2", "-12")],
            ],
        )
        .unwrap()
    }

    fn line(c: [i64; 3]) -> ProjLine {
        ProjLine::from_i64s(c).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = discriminant_quartic(&diag_triple());
        assert!(sigma_membership(&line([0, 0, 1]), &f).unwrap());
        // 2u⁴ − 33u²w² − 36w⁴ changes sign twice on v = 0
        let g = restrict_poly_to_line(&f, 4, &line([0, 1, 0]).param);
        assert!(g.poly.eval(&int(0)) < int(0) && g.poly.eval(&int(5)) > int(0));
        assert!(!sigma_membership(&line([0, 1, 0]), &f).unwrap());
        let sq = TernaryForm::from_key_map([("u^2", "1"), ("v^2", "1"), ("w^2", "1")])
            .unwrap()
            .pow(2);
        for c in [[1, 2, 3], [0, 1, -1], [5, 0, 0]] {
            assert!(sigma_membership(&line(c), &sq).unwrap());
        }
        let reducible = TernaryForm::from_key_map([("u^2", "1")]).unwrap()
            * TernaryForm::from_key_map([("u^2", "1"), ("v^2", "1")]).unwrap();
        assert!(matches!(
            sigma_membership(&line([1, 0, 0]), &reducible),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn tangency_on_v0() {
        let t = tangency_polynomial(&diag_triple(), &line([0, 1, 0])).unwrap();
        // restriction (−t²+6t−7)·u² + (−3t²−12)·w², so T = −4·A·C
        for x in [-2, 0, 1, 3, 7] {
            let x = int(x);
            let a = -&x * &x + int(6) * &x - int(7);
            let c = int(-3) * &x * &x - int(12);
            assert_eq!(t.raw.poly.eval(&x), int(-4) * a * c);
        }
        let expected = QPoly::from_i64s(&[7, -6, 1]) * QPoly::from_i64s(&[4, 0, 1]);
        assert_eq!(t.raw.poly, expected.scale(&int(-12)));
        assert!(!t.quadratic);
        assert!(t.removed_squares.is_empty());
    }

    #[test]
    fn tangency_at_infinity_member() {
        let triple = FormTriple::from_keys(
            "tangent",
            [
                &[("u^2", "1"), ("v*w", "-1")],
                &[("u^2", "3"), ("v^2", "5")],
                &[("u^2", "-7"), ("w^2", "-12")],
            ],
        )
        .unwrap();
        // u² − vw restricts to u² on v = 0
        let t = tangency_polynomial(&triple, &line([0, 1, 0])).unwrap();
        assert!(t.raw.coeff(4).is_zero());
        assert!(!t.raw.is_zero());
    }

    #[test]
    fn certificate_at_boundary_for_v0() {
        let triple = diag_triple();
        let topo = classify_real_locus(&triple).unwrap();
        let interval = topo.real_line_intervals[0].clone();
        let LineOutcome::Certified(cert) =
            line_covered_certificate(&triple, &line([0, 1, 0]), &interval).unwrap()
        else {
            panic!("v = 0 should certify");
        };
        assert_eq!(cert.location, RootLocation::Boundary);
        let ParamPoint::Finite(r) = &cert.root else {
            panic!("finite root expected")
        };
        assert_eq!(r.to_string(), "3+1*sqrt(2)");
        assert!(verify_tangency_certificate(&triple, &cert).unwrap());
    }

    #[test]
    fn failure_report_when_no_root() {
        let triple = diag_triple();
        let topo = classify_real_locus(&triple).unwrap();
        let interval = topo.real_line_intervals[0].clone();
        let LineOutcome::Failed(f) =
            line_covered_certificate(&triple, &line([1, 1, 1]), &interval).unwrap()
        else {
            panic!("u + v + w = 0 should not certify");
        };
        assert_eq!(f.endpoint_signs.len(), 2);
        assert!(f.endpoint_signs.iter().all(|(_, s)| *s == Sign::Positive));
    }

    fn sampled_membership(pencil: &PencilThroughPoint, f: &TernaryForm, t: f64) -> bool {
        let s = Sample::affine(Rational::from_float(t).unwrap());
        sigma_membership(&pencil.member(&s).unwrap(), f).unwrap()
    }

    #[test]
    fn pencil_boundaries() {
        let f = discriminant_quartic(&diag_triple());
        let p = PencilThroughPoint::containing([int(1), int(0), int(0)], [int(0), int(1), int(0)])
            .unwrap();
        let sigma = pencil_boundary_params(&p, &f).unwrap();
        assert_eq!(sigma.boundary.len(), 2);
        let (lo, hi) = (sigma.boundary[0].to_f64(), sigma.boundary[1].to_f64());
        // fine sampling agrees with the exact boundary
        for k in -400..=400 {
            let t = k as f64 / 1000.0;
            if (t - lo).abs() > 1e-6 && (t - hi).abs() > 1e-6 {
                assert_eq!(sampled_membership(&p, &f, t), lo < t && t < hi, "t = {t}");
            }
        }
        let centre =
            PencilThroughPoint::containing([int(0), int(0), int(1)], [int(0), int(1), int(0)])
                .unwrap();
        let inner = pencil_boundary_params(&centre, &f).unwrap();
        assert!(inner.sigma_arcs.is_empty());
        let empty = TernaryForm::from_key_map([("u^4", "1"), ("v^4", "1"), ("w^4", "1")]).unwrap();
        let all = pencil_boundary_params(&p, &empty).unwrap();
        assert!(all.boundary.is_empty());
        assert_eq!(all.sigma_arcs, vec![Arc::Circle]);
        let on =
            PencilThroughPoint::containing([int(1), int(0), rat(1, 1)], [int(0), int(1), int(0)])
                .unwrap();
        let cubic_through = TernaryForm::from_key_map([("u^4", "1"), ("w^4", "-1")]).unwrap();
        assert!(matches!(
            pencil_boundary_params(&on, &cubic_through),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn empty_grid_passes() {
        let grid = AuditGrid {
            base_points: 0,
            ..AuditGrid::default()
        };
        let r = surjectivity_audit(&diag_triple(), &grid).unwrap();
        assert!(r.passes());
        assert_eq!(r.certified, 0);
        assert!(r.base_line_in_sigma);
    }

    #[test]
    fn audit_needs_real_lines() {
        let triple = FormTriple::from_keys(
            "definite",
            [
                &[("u^2", "-1"), ("v^2", "-2"), ("w^2", "-3")],
                &[],
                &[("u^2", "-5"), ("v^2", "-7"), ("w^2", "-11")],
            ],
        )
        .unwrap();
        let r = surjectivity_audit(&triple, &AuditGrid::default());
        assert!(matches!(r, Err(Error::Precondition(_))), "{r:?}");
    }
}
