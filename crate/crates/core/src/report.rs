//! Analysis requests, the staged pipeline and canonical report output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::bundle::{
    cover_equations, cover_smooth_witness, degenerate_fiber_form, discriminant_quartic,
    match_up_to_scalar, prym_sextic, sextic_from_printed, smooth_quartic_check, FormTriple,
    Genus2Curve, SmoothEvidence, SmoothnessCertificate,
};
use crate::error::{Error, Result};
use crate::local::{
    qp_points_exist, real_points_exist, verify_witness, LocalVerdict, LocalWitness, Place,
    Solvability,
};
use crate::multipoly::TernaryForm;
use crate::poly::UniPoly;
use crate::prym::{
    pushforward_line_match, span_rank_verdict, verify_galois_stable, verify_on_cover,
    ComponentVerdict, CoverCheck, DivisorCertificate, PushforwardCheck, QuadFieldPoint,
};
use crate::quadext::QuadExt;
use crate::quadform::BinaryForm;
use crate::real_algebraic::RealAlgebraic;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::sigma::{surjectivity_audit, AuditGrid, AuditReport, LineOutcome};
use crate::topology::{
    classify_real_locus, cover_real_points_empty, diagonal_quartic_oval_report, profile_csv, Arc,
    CoverRealPoints, OvalReport, ParamPoint, RealTopologyReport, Sample,
};

pub const REQUEST_SCHEMA: &str = "prymcheck.request.v1";
pub const REPORT_SCHEMA: &str = "prymcheck.report.v1";
pub const DEFAULT_HENSEL_DEPTH: u32 = 24;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RequestDoc {
    schema: String,
    #[serde(default)]
    name: Option<String>,
    forms: FormsDoc,
    #[serde(default)]
    expected_sextic: Option<Vec<String>>,
    #[serde(default)]
    certificates: Vec<CertificateDoc>,
    #[serde(default)]
    local_places: Vec<PlaceDoc>,
    #[serde(default)]
    witness_primes: Option<Vec<u64>>,
    #[serde(default)]
    hensel_depth: Option<u32>,
    #[serde(default)]
    sigma_audit: Option<AuditDoc>,
    #[serde(default)]
    outputs: OutputsDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormsDoc {
    #[serde(rename = "Q1")]
    q1: BTreeMap<String, String>,
    #[serde(rename = "Q2")]
    q2: BTreeMap<String, String>,
    #[serde(rename = "Q3")]
    q3: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    #[serde(default)]
    name: Option<String>,
    d: i64,
    line: [String; 3],
    points: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PlaceDoc {
    Prime(u64),
    Named(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditDoc {
    #[serde(default)]
    base_points: Option<usize>,
    #[serde(default)]
    lines: Option<usize>,
    #[serde(default)]
    base_line: Option<[String; 3]>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OutputsDoc {
    #[serde(default)]
    json: Option<PathBuf>,
    #[serde(default)]
    summary: Option<PathBuf>,
    #[serde(default)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutputPaths {
    pub json: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCertificate {
    pub name: String,
    pub certificate: DivisorCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub name: String,
    pub triple: FormTriple,
    /// Coefficients from `t₀⁶` down to `t₁⁶`.
    pub expected_sextic: Option<Vec<Rational>>,
    pub certificates: Vec<NamedCertificate>,
    pub local_places: Vec<Place>,
    pub witness_primes: Option<Vec<u64>>,
    pub hensel_depth: u32,
    pub sigma_audit: Option<AuditGrid>,
    pub outputs: OutputPaths,
}

fn rational_at(path: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::parse(path, e.to_string()))
}

fn form_at(path: &str, entries: &BTreeMap<String, String>) -> Result<TernaryForm> {
    for (k, v) in entries {
        rational_at(&format!("{path}.{k}"), v)?;
    }
    TernaryForm::from_key_map(entries.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .map_err(|e| Error::parse(path, e.to_string()))
}

fn certificate_at(path: &str, doc: &CertificateDoc, index: usize) -> Result<NamedCertificate> {
    let line: Vec<Rational> = doc
        .line
        .iter()
        .enumerate()
        .map(|(i, s)| rational_at(&format!("{path}.line[{i}]"), s))
        .collect::<Result<_>>()?;
    let mut points = Vec::new();
    for (j, p) in doc.points.iter().enumerate() {
        let ppath = format!("{path}.points[{j}]");
        if p.len() != 5 {
            return Err(Error::parse(
                &ppath,
                "a point has five coordinates u, v, w, r, s",
            ));
        }
        for (k, c) in p.iter().enumerate() {
            let x = QuadExt::parse(c)
                .map_err(|e| Error::parse(format!("{ppath}[{k}]"), e.to_string()))?;
            if x.radicand().is_some_and(|d| d != doc.d) {
                return Err(Error::parse(
                    format!("{ppath}[{k}]"),
                    format!(
                        "coordinate lies in Q(sqrt({})), not in Q(sqrt({}))",
                        x.radicand().unwrap_or(0),
                        doc.d
                    ),
                ));
            }
        }
        let refs: Vec<&str> = p.iter().map(String::as_str).collect();
        points.push(QuadFieldPoint::parse(&refs).map_err(|e| Error::parse(&ppath, e.to_string()))?);
    }
    let line: [Rational; 3] = line.try_into().expect("three coefficients");
    let certificate = DivisorCertificate::new(points, doc.d, line)
        .map_err(|e| Error::parse(path, e.to_string()))?;
    let name = doc
        .name
        .clone()
        .unwrap_or_else(|| format!("certificate-{index}"));
    Ok(NamedCertificate { name, certificate })
}

/// Parses and validates a JSON request document.
pub fn parse_request(document: &str) -> Result<AnalysisRequest> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let doc: RequestDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let message = e.into_inner().to_string();
        let parent = if path == "." || path.is_empty() {
            None
        } else {
            Some(path)
        };
        // a missing field is reported at its parent; name the field itself
        let missing = message
            .strip_prefix("missing field `")
            .and_then(|m| m.split('`').next())
            .map(str::to_string);
        let path = match (parent, missing) {
            (Some(p), Some(m)) => format!("{p}.{m}"),
            (None, Some(m)) => m,
            (Some(p), None) => p,
            (None, None) => "$".to_string(),
        };
        Error::parse(path, message)
    })?;
    if doc.schema != REQUEST_SCHEMA {
        return Err(Error::parse(
            "schema",
            format!("expected `{REQUEST_SCHEMA}`, found `{}`", doc.schema),
        ));
    }
    let name = doc.name.unwrap_or_else(|| "unnamed".to_string());
    let q1 = form_at("forms.Q1", &doc.forms.q1)?;
    let q2 = form_at("forms.Q2", &doc.forms.q2)?;
    let q3 = form_at("forms.Q3", &doc.forms.q3)?;
    let triple = FormTriple::new(name.clone(), q1, q2, q3)
        .map_err(|e| Error::parse("forms", e.to_string()))?;
    let expected_sextic = match doc.expected_sextic {
        None => None,
        Some(cs) => {
            if cs.len() != 7 {
                return Err(Error::parse(
                    "expected_sextic",
                    "a binary sextic has seven coefficients",
                ));
            }
            Some(
                cs.iter()
                    .enumerate()
                    .map(|(i, s)| rational_at(&format!("expected_sextic[{i}]"), s))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let certificates = doc
        .certificates
        .iter()
        .enumerate()
        .map(|(i, c)| certificate_at(&format!("certificates[{i}]"), c, i))
        .collect::<Result<Vec<_>>>()?;
    let local_places = doc
        .local_places
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            PlaceDoc::Named(s) if s == "R" => Ok(Place::Real),
            PlaceDoc::Named(s) => Err(Error::parse(
                format!("local_places[{i}]"),
                format!("unknown place `{s}`"),
            )),
            PlaceDoc::Prime(p) => Ok(Place::Prime(*p)),
        })
        .collect::<Result<Vec<_>>>()?;
    let sigma_audit = match doc.sigma_audit {
        None => None,
        Some(a) => {
            let mut grid = AuditGrid::default();
            if let Some(n) = a.base_points {
                grid.base_points = n;
            }
            if let Some(n) = a.lines {
                grid.lines = n;
            }
            if let Some(l) = a.base_line {
                let cs = l
                    .iter()
                    .enumerate()
                    .map(|(i, s)| rational_at(&format!("sigma_audit.base_line[{i}]"), s))
                    .collect::<Result<Vec<_>>>()?;
                grid.base_line = cs.try_into().expect("three coefficients");
            }
            Some(grid)
        }
    };
    Ok(AnalysisRequest {
        name,
        triple,
        expected_sextic,
        certificates,
        local_places,
        witness_primes: doc.witness_primes,
        hensel_depth: doc.hensel_depth.unwrap_or(DEFAULT_HENSEL_DEPTH),
        sigma_audit,
        outputs: OutputPaths {
            json: doc.outputs.json,
            summary: doc.outputs.summary,
            csv: doc.outputs.csv,
        },
    })
}

pub fn read_request(path: &Path) -> Result<AnalysisRequest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_request(&text)
}

/// Which stages a run executes; the others are reported as skipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stages {
    pub smoothness: bool,
    pub prym: bool,
    pub sextic: bool,
    pub topology: bool,
    pub certificates: bool,
    pub local: bool,
    pub sigma: bool,
}

impl Stages {
    pub fn all() -> Self {
        Stages {
            smoothness: true,
            prym: true,
            sextic: true,
            topology: true,
            certificates: true,
            local: true,
            sigma: true,
        }
    }

    pub fn none() -> Self {
        Stages {
            smoothness: false,
            prym: false,
            sextic: false,
            topology: false,
            certificates: false,
            local: false,
            sigma: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage<T> {
    Skipped,
    Failed(Error),
    Done(T),
}

impl<T> Stage<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(x) => Stage::Done(x),
            Err(e) => Stage::Failed(e),
        }
    }

    pub fn done(&self) -> Option<&T> {
        match self {
            Stage::Done(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub primes: Vec<u64>,
    pub discriminant: SmoothnessCertificate,
    pub cover: SmoothnessCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexticReport {
    pub form: BinaryForm<Rational>,
    pub expected: Option<BinaryForm<Rational>>,
    /// `λ` with `expected = λ·computed`.
    pub scalar: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyStage {
    pub report: RealTopologyReport,
    pub cover_real_points: CoverRealPoints,
    pub ovals: std::result::Result<OvalReport, Error>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub name: String,
    pub on_cover: CoverCheck,
    pub galois_stable: bool,
    pub pushforward: std::result::Result<PushforwardCheck, Error>,
    pub verdict: std::result::Result<ComponentVerdict, Error>,
}

impl CertificateReport {
    pub fn passes(&self) -> bool {
        self.on_cover.on_cover
            && self.galois_stable
            && self.pushforward.as_ref().is_ok_and(|p| p.matches)
            && self.verdict.is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalResult {
    pub place: Place,
    pub verdict: std::result::Result<LocalVerdict, Error>,
    /// A solvable verdict re-checked from its witness.
    pub witness_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub name: String,
    pub triple: FormTriple,
    pub smoothness: Stage<SmoothnessReport>,
    pub prym: Stage<Genus2Curve>,
    pub sextic: Stage<SexticReport>,
    pub topology: Stage<TopologyStage>,
    pub certificates: Stage<Vec<CertificateReport>>,
    pub local: Stage<Vec<LocalResult>>,
    pub sigma: Stage<AuditReport>,
    /// Wall-clock time per stage; kept out of the JSON so reports stay reproducible.
    pub timings: Vec<(&'static str, Duration)>,
}

fn timed<T>(
    timings: &mut Vec<(&'static str, Duration)>,
    name: &'static str,
    f: impl FnOnce() -> T,
) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((name, start.elapsed()));
    out
}

fn run_smoothness(req: &AnalysisRequest) -> Result<SmoothnessReport> {
    let primes = req
        .witness_primes
        .clone()
        .unwrap_or_else(|| req.triple.default_witness_primes());
    let discriminant = smooth_quartic_check(&discriminant_quartic(&req.triple), &primes)?;
    let cover = cover_smooth_witness(&cover_equations(&req.triple), &primes);
    Ok(SmoothnessReport {
        primes,
        discriminant,
        cover,
    })
}

fn run_sextic(req: &AnalysisRequest) -> Result<SexticReport> {
    let form = degenerate_fiber_form(&req.triple)?;
    let expected = req
        .expected_sextic
        .as_deref()
        .map(sextic_from_printed)
        .transpose()?;
    let scalar = expected.as_ref().and_then(|e| match_up_to_scalar(&form, e));
    Ok(SexticReport {
        form,
        expected,
        scalar,
    })
}

fn run_topology(req: &AnalysisRequest) -> Result<TopologyStage> {
    let report = classify_real_locus(&req.triple)?;
    let cover_real_points = cover_real_points_empty(&req.triple);
    let ovals = diagonal_quartic_oval_report(&discriminant_quartic(&req.triple));
    Ok(TopologyStage {
        report,
        cover_real_points,
        ovals,
    })
}

fn run_certificates(req: &AnalysisRequest) -> Vec<CertificateReport> {
    let pres = cover_equations(&req.triple);
    req.certificates
        .iter()
        .map(|c| CertificateReport {
            name: c.name.clone(),
            on_cover: verify_on_cover(&c.certificate, &pres),
            galois_stable: verify_galois_stable(&c.certificate),
            pushforward: pushforward_line_match(&c.certificate, &pres.delta),
            verdict: span_rank_verdict(&c.certificate),
        })
        .collect()
}

fn run_local(req: &AnalysisRequest, curve: &Genus2Curve) -> Vec<LocalResult> {
    req.local_places
        .iter()
        .map(|&place| {
            let verdict = match place {
                Place::Real => real_points_exist(curve),
                Place::Prime(p) => qp_points_exist(curve, p, req.hensel_depth),
            };
            let witness_verified = verdict.as_ref().is_ok_and(|v| verify_witness(curve, v));
            LocalResult {
                place,
                verdict,
                witness_verified,
            }
        })
        .collect()
}

/// Runs the selected stages in pipeline order; stage errors are recorded, not raised.
pub fn run_report(req: &AnalysisRequest, stages: &Stages) -> AnalysisReport {
    let mut timings = Vec::new();
    let smoothness = if stages.smoothness {
        Stage::from_result(timed(&mut timings, "smoothness", || run_smoothness(req)))
    } else {
        Stage::Skipped
    };
    let prym_result = if stages.prym || stages.local {
        Some(timed(&mut timings, "prym", || prym_sextic(&req.triple)))
    } else {
        None
    };
    let sextic = if stages.sextic {
        Stage::from_result(timed(&mut timings, "sextic", || run_sextic(req)))
    } else {
        Stage::Skipped
    };
    // independent stages
    let ((topology, t_topo), ((certificates, t_cert), (local, t_local))) = rayon::join(
        || {
            let start = Instant::now();
            let s = if stages.topology {
                Stage::from_result(run_topology(req))
            } else {
                Stage::Skipped
            };
            (s, start.elapsed())
        },
        || {
            rayon::join(
                || {
                    let start = Instant::now();
                    let s = if !stages.certificates || req.certificates.is_empty() {
                        Stage::Skipped
                    } else {
                        Stage::Done(run_certificates(req))
                    };
                    (s, start.elapsed())
                },
                || {
                    let start = Instant::now();
                    let s = match (&prym_result, stages.local && !req.local_places.is_empty()) {
                        (_, false) => Stage::Skipped,
                        (Some(Ok(curve)), true) => Stage::Done(run_local(req, curve)),
                        (Some(Err(e)), true) => Stage::Failed(e.clone()),
                        (None, true) => Stage::Skipped,
                    };
                    (s, start.elapsed())
                },
            )
        },
    );
    for (name, ran, t) in [
        ("real_topology", !matches!(topology, Stage::Skipped), t_topo),
        (
            "certificates",
            !matches!(certificates, Stage::Skipped),
            t_cert,
        ),
        ("local_points", !matches!(local, Stage::Skipped), t_local),
    ] {
        if ran {
            timings.push((name, t));
        }
    }
    let sigma = match (&req.sigma_audit, stages.sigma) {
        (Some(grid), true) => Stage::from_result(timed(&mut timings, "sigma_audit", || {
            surjectivity_audit(&req.triple, grid)
        })),
        _ => Stage::Skipped,
    };
    let prym = match (stages.prym, prym_result) {
        (true, Some(r)) => Stage::from_result(r),
        _ => Stage::Skipped,
    };
    AnalysisReport {
        name: req.name.clone(),
        triple: req.triple.clone(),
        smoothness,
        prym,
        sextic,
        topology,
        certificates,
        local,
        sigma,
        timings,
    }
}

pub fn run_full_report(req: &AnalysisRequest) -> AnalysisReport {
    run_report(req, &Stages::all())
}

// ---- JSON encoding ----

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

fn quad(x: &QuadExt) -> Value {
    match x.as_rational() {
        Some(r) => q(r),
        None => json!({"a": q(x.a()), "b": q(x.b()), "d": x.radicand().unwrap_or(0).to_string()}),
    }
}

/// Coefficients from the highest power down.
fn poly_desc(p: &UniPoly<Rational>, degree: usize) -> Value {
    Value::Array((0..=degree).rev().map(|i| q(&p.coeff(i))).collect())
}

fn real(x: &RealAlgebraic) -> Value {
    match x {
        RealAlgebraic::Rational(r) => q(r),
        RealAlgebraic::Quadratic(z) => quad(z),
        RealAlgebraic::Root(iv) => json!({
            "poly": poly_desc(&iv.poly, iv.poly.deg0()),
            "lo": q(&iv.lo),
            "hi": q(&iv.hi),
            "approx": x.to_f64(),
        }),
    }
}

fn param(x: &ParamPoint) -> Value {
    match x {
        ParamPoint::Finite(r) => real(r),
        ParamPoint::Infinity => Value::String("inf".into()),
    }
}

fn arc(a: &Arc) -> Value {
    match a {
        Arc::Circle => Value::String("P1(R)".into()),
        Arc::Closed { start, end } => json!({"start": param(start), "end": param(end)}),
    }
}

fn sample(s: &Sample) -> Value {
    json!({"t0": q(&s.t0), "t1": q(&s.t1), "exact": s.exact_string(), "approx": s.approx()})
}

fn error_json(e: &Error) -> Value {
    json!({"status": "error", "error": e.to_string()})
}

fn stage_json<T>(s: &Stage<T>, f: impl FnOnce(&T) -> Value) -> Value {
    match s {
        Stage::Skipped => json!({"status": "skipped"}),
        Stage::Failed(e) => error_json(e),
        Stage::Done(x) => {
            let mut v = f(x);
            if let Value::Object(m) = &mut v {
                m.insert("status".into(), Value::String("ok".into()));
            }
            v
        }
    }
}

fn smoothness_json(c: &SmoothnessCertificate) -> Value {
    let evidence = match &c.evidence {
        SmoothEvidence::WitnessPrime(p) => json!({"witness_prime": p}),
        SmoothEvidence::SingularPoint(pt) => {
            json!({"singular_point": pt.iter().map(quad).collect::<Vec<_>>()})
        }
        SmoothEvidence::None => Value::Null,
    };
    json!({
        "verdict": c.verdict.as_str(),
        "method": c.method(),
        "evidence": evidence,
        "attempts": c.attempts.iter().map(|(p, why)| json!({"prime": p, "reason": why})).collect::<Vec<_>>(),
    })
}

fn topology_json(t: &TopologyStage) -> Value {
    let r = &t.report;
    let segments: Vec<Value> = r
        .profile
        .segments
        .iter()
        .map(|s| {
            json!({
                "start": s.segment.start.as_ref().map(param),
                "end": s.segment.end.as_ref().map(param),
                "sample": sample(&s.segment.sample),
                "signature": [s.signature.p, s.signature.q],
            })
        })
        .collect();
    let cover = match t.cover_real_points {
        CoverRealPoints::EmptyCertified { definite_form } => {
            json!({"verdict": "empty", "negative_definite_form": format!("Q{}", definite_form + 1)})
        }
        CoverRealPoints::Inconclusive => json!({"verdict": "inconclusive"}),
    };
    let ovals = match &t.ovals {
        Ok(o) => json!({
            "status": "ok",
            "components": o.components,
            "method": o.method,
            "conic": o.conic.to_key_map(),
            "base_point": o.base_point.as_ref().map(|p| qs(p)),
            "arcs": o.arcs.iter().map(|a| json!({
                "touches": a.touches,
                "sample": qs(&a.sample),
                "components": a.components,
            })).collect::<Vec<_>>(),
        }),
        Err(e) => error_json(e),
    };
    json!({
        "signature_profile": {
            "roots": r.profile.roots.iter().map(param).collect::<Vec<_>>(),
            "segments": segments,
        },
        "real_point_intervals": r.real_point_intervals.iter().map(arc).collect::<Vec<_>>(),
        "real_line_intervals": r.real_line_intervals.iter().map(arc).collect::<Vec<_>>(),
        "component_count": r.component_count,
        "classification": r.classification.to_string(),
        "pi1_surjective": r.pi1_surjective,
        "cover_real_points": cover,
        "discriminant_ovals": ovals,
    })
}

fn certificate_json(c: &CertificateReport) -> Value {
    let pushforward = match &c.pushforward {
        Ok(p) => {
            json!({"matches": p.matches, "on_line": p.on_line, "restricted": qs(&p.restricted), "reason": p.reason})
        }
        Err(e) => error_json(e),
    };
    let verdict = match &c.verdict {
        Ok(v) => json!({
            "label": v.label.as_str(),
            "span_rank": v.rank,
            "minor_uvrs": quad(&v.minor_uvrs),
            "nonzero_minor": v.nonzero_minor.as_ref().map(|(cols, det)| json!({"columns": cols, "det": quad(det)})),
        }),
        Err(e) => error_json(e),
    };
    json!({
        "name": c.name,
        "passes": c.passes(),
        "on_cover": c.on_cover.on_cover,
        "residues": c.on_cover.residues.iter().map(|r| r.iter().map(quad).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "galois_stable": c.galois_stable,
        "pushforward": pushforward,
        "verdict": verdict,
    })
}

fn local_json(r: &LocalResult) -> Value {
    let place = r.place.to_string();
    match &r.verdict {
        Err(e) => json!({"place": place, "status": "error", "error": e.to_string()}),
        Ok(v) => {
            let witness = match &v.verdict {
                Solvability::Solvable(LocalWitness::RealRoot(x)) => {
                    json!({"kind": "real-root", "t": real(x)})
                }
                Solvability::Solvable(LocalWitness::RealPositive(t)) => {
                    json!({"kind": "positive-value", "t": q(t)})
                }
                Solvability::Solvable(LocalWitness::PAdic {
                    chart,
                    x,
                    valuation,
                    unit_residue,
                }) => json!({
                    "kind": "p-adic",
                    "chart": chart.as_str(),
                    "x": q(x),
                    "valuation": valuation,
                    "unit_residue": unit_residue,
                }),
                _ => Value::Null,
            };
            json!({
                "place": place,
                "status": "ok",
                "verdict": v.verdict.as_str(),
                "witness": witness,
                "witness_verified": r.witness_verified,
                "depth_used": v.depth_used,
                "required_depth": v.required_depth,
                "closed_branches": v.leaves.iter().map(|l| json!({
                    "chart": l.chart.as_str(),
                    "residue": l.residue.to_string(),
                    "level": l.level,
                    "valuation": l.valuation,
                    "unit_residue": l.unit_residue,
                })).collect::<Vec<_>>(),
            })
        }
    }
}

fn audit_json(a: &AuditReport) -> Value {
    let base_points: Vec<Value> = a
        .base_points
        .iter()
        .map(|bp| {
            let lines: Vec<Value> = bp
                .lines
                .iter()
                .map(|l| match &l.outcome {
                    LineOutcome::Certified(c) => json!({
                        "param": sample(&l.param),
                        "line": qs(c.line.coeffs()),
                        "certified": true,
                        "root": param(&c.root),
                        "bracket": c.bracket.as_ref().map(|(lo, hi)| json!([q(lo), q(hi)])),
                        "location": c.location.as_str(),
                        "sample": q(&c.sample.t0),
                        "signature": [c.signature.p, c.signature.q],
                        "tangency": poly_desc(&c.tangency.raw.poly, 4),
                        "tangency_quadratic": c.tangency.quadratic,
                    }),
                    LineOutcome::Failed(f) => json!({
                        "param": sample(&l.param),
                        "line": qs(f.line.coeffs()),
                        "certified": false,
                        "reason": f.reason,
                        "endpoint_signs": f.endpoint_signs.iter().map(|(x, s)| json!({"at": param(x), "sign": s.as_i8()})).collect::<Vec<_>>(),
                        "critical_signs": f.critical_signs.iter().map(|(x, s)| json!({"at": param(x), "sign": s.as_i8()})).collect::<Vec<_>>(),
                    }),
                })
                .collect();
            json!({
                "point": qs(&bp.point),
                "boundary": bp.boundary.iter().map(param).collect::<Vec<_>>(),
                "sigma_arcs": bp.sigma_arcs.iter().map(arc).collect::<Vec<_>>(),
                "skipped_lines": bp.skipped,
                "error": bp.error,
                "lines": lines,
            })
        })
        .collect();
    json!({
        "base_line": qs(&a.base_line),
        "base_line_in_sigma": a.base_line_in_sigma,
        "real_line_intervals": a.real_line_intervals.iter().map(arc).collect::<Vec<_>>(),
        "certified": a.certified,
        "failed": a.failed,
        "passes": a.passes(),
        "base_points": base_points,
    })
}

pub fn report_json(r: &AnalysisReport) -> Value {
    let forms: BTreeMap<String, Value> = ["Q1", "Q2", "Q3"]
        .iter()
        .zip(&r.triple.q)
        .map(|(k, f)| (k.to_string(), json!(f.to_key_map())))
        .collect();
    json!({
        "schema": REPORT_SCHEMA,
        "name": r.name,
        "forms": forms,
        "smoothness": stage_json(&r.smoothness, |s| json!({
            "witness_primes": s.primes,
            "discriminant_quartic": smoothness_json(&s.discriminant),
            "cover": smoothness_json(&s.cover),
        })),
        "prym_curve": stage_json(&r.prym, |c| json!({
            "f": poly_desc(&c.f, c.f.deg0()),
            "degree": c.f.deg0(),
            "genus2_valid": true,
        })),
        "degenerate_sextic": stage_json(&r.sextic, |s| json!({
            "coefficients": poly_desc(&s.form.poly, 6),
            "expected": s.expected.as_ref().map(|e| poly_desc(&e.poly, 6)),
            "scalar": s.scalar.as_ref().map(q),
            "matches_expected": s.expected.as_ref().map(|_| s.scalar.is_some()),
        })),
        "real_topology": stage_json(&r.topology, topology_json),
        "certificates": stage_json(&r.certificates, |cs| json!({
            "results": cs.iter().map(certificate_json).collect::<Vec<_>>(),
        })),
        "local_points": stage_json(&r.local, |ls| json!({
            "places": ls.iter().map(local_json).collect::<Vec<_>>(),
        })),
        "sigma_audit": stage_json(&r.sigma, audit_json),
    })
}

/// Canonical JSON text: sorted keys, two-space indentation, trailing newline.
pub fn canonical_json(r: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(r)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn profile_csv_of(r: &AnalysisReport) -> Option<String> {
    r.topology.done().map(|t| profile_csv(&t.report.profile))
}

fn stage_line<T>(out: &mut String, name: &str, s: &Stage<T>, f: impl FnOnce(&T) -> String) {
    let text = match s {
        Stage::Skipped => "skipped".to_string(),
        Stage::Failed(e) => format!("error: {e}"),
        Stage::Done(x) => f(x),
    };
    let _ = writeln!(out, "{name:<16} {text}");
}

pub fn summary_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "report {} ({REPORT_SCHEMA})", r.name);
    stage_line(&mut out, "smoothness", &r.smoothness, |s| {
        format!(
            "discriminant {} ({}), cover {} ({})",
            s.discriminant.verdict.as_str(),
            s.discriminant.method(),
            s.cover.verdict.as_str(),
            s.cover.method()
        )
    });
    stage_line(&mut out, "prym curve", &r.prym, |c| {
        format!("y^2 = {}", c.f)
    });
    stage_line(&mut out, "sextic", &r.sextic, |s| {
        match (&s.expected, &s.scalar) {
            (None, _) => format!("{}", s.form.poly),
            (Some(_), Some(l)) => format!("matches expected with scalar {}", format_rational(l)),
            (Some(_), None) => "does not match the expected sextic".to_string(),
        }
    });
    stage_line(&mut out, "real topology", &r.topology, |t| {
        let sigs: Vec<String> = t
            .report
            .profile
            .segments
            .iter()
            .map(|s| format!("{}@{}", s.signature, s.segment.sample.exact_string()))
            .collect();
        let pts: Vec<String> = t
            .report
            .real_point_intervals
            .iter()
            .map(|a| a.to_string())
            .collect();
        let lines: Vec<String> = t
            .report
            .real_line_intervals
            .iter()
            .map(|a| a.to_string())
            .collect();
        format!(
            "{}; signatures {}; points {}; lines {}",
            t.report.classification,
            sigs.join(" "),
            pts.join(" "),
            lines.join(" ")
        )
    });
    stage_line(&mut out, "certificates", &r.certificates, |cs| {
        cs.iter()
            .map(|c| match &c.verdict {
                Ok(v) => format!(
                    "{}: {} ({}, minor {})",
                    c.name,
                    if c.passes() { "pass" } else { "fail" },
                    v.label.as_str(),
                    v.minor_uvrs
                ),
                Err(e) => format!("{}: {e}", c.name),
            })
            .collect::<Vec<_>>()
            .join("; ")
    });
    stage_line(&mut out, "local points", &r.local, |ls| {
        ls.iter()
            .map(|l| match &l.verdict {
                Ok(v) => format!("{} {}", l.place, v.verdict.as_str()),
                Err(e) => format!("{} error: {e}", l.place),
            })
            .collect::<Vec<_>>()
            .join("; ")
    });
    stage_line(&mut out, "sigma audit", &r.sigma, |a| {
        format!(
            "{} certified, {} failed, base line in sigma: {}",
            a.certified, a.failed, a.base_line_in_sigma
        )
    });
    let _ = writeln!(out, "timings");
    for (name, d) in &r.timings {
        let _ = writeln!(out, "  {name:<14} {:.3}s", d.as_secs_f64());
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Writes whichever of the JSON report, summary and CSV profile have a path.
pub fn emit_outputs(r: &AnalysisReport, paths: &OutputPaths) -> Result<()> {
    if let Some(p) = &paths.json {
        write_file(p, &canonical_json(r))?;
    }
    if let Some(p) = &paths.summary {
        write_file(p, &summary_text(r))?;
    }
    if let Some(p) = &paths.csv {
        let csv = profile_csv_of(r)
            .ok_or_else(|| Error::Precondition("no signature profile to write as CSV".into()))?;
        write_file(p, &csv)?;
    }
    Ok(())
}
