//! Curve parsing, the end-to-end analysis driver, and deterministic report
//! rendering.
//!
//! JSON output is canonical: object keys are sorted, every integer that can
//! exceed machine precision is rendered as a decimal string, and identical
//! input with identical options produces byte-identical output.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::global::{
    assemble_global, AnalysisOptions, GlobalError, GlobalReport, PrimeData, GAMMA_FACTOR_NOTE,
};
use crate::local::RootNumber3;
use crate::sym3::Sym3LocalData;
use crate::weierstrass::{
    invariants, is_minimal_at, minimality_suspects, minimize, Curve, Invariants, Transformation,
    WeierstrassError,
};

/// A parse failure, annotated with the byte offset it occurred at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed curve together with its input echo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub raw: String,
    pub label: Option<String>,
    pub curve: Curve,
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError { offset: self.pos, message: format!("expected {what}") })
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.bytes.len() && (self.bytes[self.pos] == b'-' || self.bytes[self.pos] == b'+')
        {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError {
                offset: self.pos,
                message: "expected an integer".to_string(),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("validated digits"))
    }
}

/// Parses `[a1, a2, a3, a4, a6]` (whitespace-tolerant, arbitrary-precision
/// integers) into a curve.
pub fn parse_curve(text: &str) -> Result<CurveSpec, ParseError> {
    let mut sc = Scanner::new(text);
    sc.expect(b'[', "'['")?;
    let mut coeffs = Vec::with_capacity(5);
    for i in 0..5 {
        if i > 0 {
            sc.expect(b',', "',' (a curve has exactly five coefficients)")?;
        }
        coeffs.push(sc.integer()?);
    }
    sc.expect(b']', "']' after five coefficients")?;
    sc.skip_ws();
    if sc.pos != sc.bytes.len() {
        return Err(ParseError {
            offset: sc.pos,
            message: "unexpected trailing input".to_string(),
        });
    }
    let mut it = coeffs.into_iter();
    let curve = Curve::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    );
    Ok(CurveSpec { raw: text.to_string(), label: None, curve })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinimalityPolicy {
    /// Reject non-minimal input (the default: every table reads valuations
    /// off the minimal model).
    #[default]
    Verify,
    /// Replace the input by a global minimal model before analysis.
    Minimize,
    /// Trust the caller; skips the check entirely.
    AssumeMinimal,
}

impl MinimalityPolicy {
    pub fn label(self) -> &'static str {
        match self {
            MinimalityPolicy::Verify => "verify",
            MinimalityPolicy::Minimize => "minimize",
            MinimalityPolicy::AssumeMinimal => "assume-minimal",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub minimality: MinimalityPolicy,
    pub root_number_3: RootNumber3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    RefusedUnsupported2,
    RefusedSingular,
    RefusedNonminimal,
    MalformedInput,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::RefusedUnsupported2 => "refused-unsupported-2",
            Status::RefusedSingular => "refused-singular",
            Status::RefusedNonminimal => "refused-nonminimal",
            Status::MalformedInput => "malformed-input",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimalityInfo {
    pub policy: MinimalityPolicy,
    /// Whether the input model itself was minimal; `None` when assumed.
    pub input_minimal: Option<bool>,
    pub nonminimal_primes: Vec<u64>,
    /// The coordinate change applied, when minimisation changed the model.
    pub transformation: Option<Transformation>,
    /// Coefficients of the model the analysis actually ran on.
    pub analyzed: Curve,
}

/// Everything the CLI prints for one input.
#[derive(Debug, Clone)]
pub struct ReportEnvelope {
    pub raw: String,
    pub label: Option<String>,
    pub coefficients: Option<Curve>,
    pub status: Status,
    pub error: Option<String>,
    pub minimality: Option<MinimalityInfo>,
    pub invariants: Option<Invariants>,
    pub report: Option<GlobalReport>,
    pub partial: Option<Vec<PrimeData>>,
}

impl ReportEnvelope {
    fn empty(raw: String, label: Option<String>, status: Status) -> Self {
        ReportEnvelope {
            raw,
            label,
            coefficients: None,
            status,
            error: None,
            minimality: None,
            invariants: None,
            report: None,
            partial: None,
        }
    }

    pub fn malformed(raw: &str, label: Option<String>, err: &ParseError) -> Self {
        let mut env = Self::empty(raw.to_string(), label, Status::MalformedInput);
        env.error = Some(err.to_string());
        env
    }
}

/// Runs the full pipeline on a parsed curve.
pub fn analyze(spec: &CurveSpec, opts: &AnalyzeOptions) -> ReportEnvelope {
    let mut env = ReportEnvelope::empty(spec.raw.clone(), spec.label.clone(), Status::Ok);
    env.coefficients = Some(spec.curve.clone());
    let inv = match invariants(&spec.curve) {
        Ok(inv) => inv,
        Err(WeierstrassError::SingularCurve) => {
            env.status = Status::RefusedSingular;
            env.error = Some(WeierstrassError::SingularCurve.to_string());
            return env;
        }
        Err(e) => {
            env.status = Status::Error;
            env.error = Some(e.to_string());
            return env;
        }
    };
    let mut analyzed = spec.curve.clone();
    let mut info = MinimalityInfo {
        policy: opts.minimality,
        input_minimal: None,
        nonminimal_primes: Vec::new(),
        transformation: None,
        analyzed: analyzed.clone(),
    };
    match opts.minimality {
        MinimalityPolicy::Verify => {
            let mut bad = Vec::new();
            for p in minimality_suspects(&inv) {
                match is_minimal_at(&spec.curve, p) {
                    Ok(true) => {}
                    Ok(false) => bad.push(p),
                    Err(e) => {
                        env.status = Status::Error;
                        env.error = Some(e.to_string());
                        return env;
                    }
                }
            }
            info.input_minimal = Some(bad.is_empty());
            if !bad.is_empty() {
                info.nonminimal_primes = bad.clone();
                env.minimality = Some(info);
                env.status = Status::RefusedNonminimal;
                env.error = Some(format!(
                    "model is not minimal at {}; rerun with --minimize or supply a minimal model",
                    bad.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
                ));
                return env;
            }
        }
        MinimalityPolicy::Minimize => match minimize(&spec.curve) {
            Ok((min, t)) => {
                info.input_minimal = Some(t.is_identity());
                if !t.is_identity() {
                    info.transformation = Some(t);
                }
                analyzed = min;
                info.analyzed = analyzed.clone();
            }
            Err(e) => {
                env.status = Status::Error;
                env.error = Some(e.to_string());
                return env;
            }
        },
        MinimalityPolicy::AssumeMinimal => {}
    }
    let inv = if analyzed == spec.curve {
        inv
    } else {
        match invariants(&analyzed) {
            Ok(inv) => inv,
            Err(e) => {
                env.status = Status::Error;
                env.error = Some(e.to_string());
                return env;
            }
        }
    };
    env.minimality = Some(info);
    env.invariants = Some(inv.clone());
    let gopts = AnalysisOptions { root_number_3: opts.root_number_3 };
    match assemble_global(&inv, &gopts) {
        Ok(report) => {
            env.report = Some(report);
        }
        Err(GlobalError::UnsupportedAtTwo { partial }) => {
            env.status = Status::RefusedUnsupported2;
            env.error = Some(
                "additive potentially good reduction at 2 is outside the classification tables"
                    .to_string(),
            );
            env.partial = Some(partial);
        }
        Err(e) => {
            env.status = Status::Error;
            env.error = Some(e.to_string());
        }
    }
    env
}

/// Parses and analyses one textual curve; parse failures become
/// `malformed-input` envelopes.
pub fn analyze_text(text: &str, label: Option<String>, opts: &AnalyzeOptions) -> ReportEnvelope {
    match parse_curve(text) {
        Ok(mut spec) => {
            spec.label = label;
            analyze(&spec, opts)
        }
        Err(e) => ReportEnvelope::malformed(text, label, &e),
    }
}

fn vint(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn vrat(x: &BigRational) -> Value {
    if x.is_integer() {
        Value::String(x.to_integer().to_string())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn vsign(s: Option<i8>) -> Value {
    match s {
        Some(1) => Value::String("+1".to_string()),
        Some(-1) => Value::String("-1".to_string()),
        Some(other) => Value::String(other.to_string()),
        None => Value::Null,
    }
}

fn curve_json(c: &Curve) -> Value {
    Value::Array(c.coefficients().iter().map(|x| vint(x)).collect())
}

fn gl2_json(d: &crate::local::LocalGl2Data) -> Value {
    use crate::local::Gl2Kind;
    match &d.kind {
        Gl2Kind::UnramifiedGood => json!({
            "kind": "good-unramified",
            "conductor_exponent": d.conductor_exponent,
        }),
        Gl2Kind::TwistedSteinberg { character } => json!({
            "kind": "twisted-steinberg",
            "character": character.kind.label(),
            "character_conductor": character.conductor_exponent,
            "conductor_exponent": d.conductor_exponent,
        }),
        Gl2Kind::PrincipalSeries { chi_conductor, chi_unit_order } => json!({
            "kind": "principal-series",
            "chi_conductor": chi_conductor,
            "chi_unit_order": chi_unit_order,
            "conductor_exponent": d.conductor_exponent,
        }),
        Gl2Kind::DihedralSupercuspidal {
            field_ramified,
            xi_conductor,
            xi_unit_order,
            xi_at_uniformizer,
        } => json!({
            "kind": "dihedral-supercuspidal",
            "field_ramified": field_ramified,
            "xi_conductor": xi_conductor,
            "xi_unit_order": xi_unit_order,
            "xi_at_uniformizer": vsign(*xi_at_uniformizer),
            "conductor_exponent": d.conductor_exponent,
        }),
    }
}

fn sym3_json(s: &Sym3LocalData, w3: Option<i8>) -> Value {
    json!({
        "conductor_exponent": s.conductor_exponent,
        "rep_type": s.rep_type.label(),
        "epsilon": s.epsilon.render(),
        "epsilon_resolved": vsign(s.epsilon.resolve(w3)),
        "l_factor": s.l_factor.kind_label(),
        "l_factor_display": s.l_factor.display(),
    })
}

fn prime_json(d: &PrimeData, w3: Option<i8>) -> Value {
    json!({
        "p": d.p.to_string(),
        "v_disc": d.v_disc,
        "reduction": d.reduction.label(),
        "q3_condition": d.q3_condition.map(|c| c.label()),
        "neron_type": d.neron_type.map(|n| n.label()),
        "gl2": d.gl2.as_ref().map(gl2_json).unwrap_or(Value::Null),
        "sym3": d.sym3.as_ref().map(|s| sym3_json(s, w3)).unwrap_or(Value::Null),
    })
}

fn invariants_json(inv: &Invariants) -> Value {
    json!({
        "b2": vint(&inv.b2),
        "b4": vint(&inv.b4),
        "b6": vint(&inv.b6),
        "b8": vint(&inv.b8),
        "c4": vint(&inv.c4),
        "c6": vint(&inv.c6),
        "discriminant": vint(&inv.discriminant),
        "j": vrat(&inv.j),
    })
}

fn report_json(r: &GlobalReport, w3: Option<i8>) -> Value {
    json!({
        "conductor": r.conductor.to_string(),
        "level": r.level.to_string(),
        "cm": r.cm,
        "gamma_factor": r.gamma_factor,
        "primes": r.per_prime.iter().map(|d| prime_json(d, w3)).collect::<Vec<_>>(),
        "atkin_lehner": r.atkin_lehner.iter().map(|a| json!({
            "p": a.p.to_string(),
            "sign": a.sign.render(),
            "resolved": vsign(a.resolved),
        })).collect::<Vec<_>>(),
        "warnings": r.warnings,
    })
}

/// Renders the envelope as a JSON value with sorted keys.
pub fn envelope_to_json(env: &ReportEnvelope, opts: &AnalyzeOptions) -> Value {
    let w3 = opts.root_number_3.resolve();
    json!({
        "status": env.status.label(),
        "error": env.error,
        "input": {
            "raw": env.raw,
            "label": env.label,
            "coefficients": env.coefficients.as_ref().map(curve_json).unwrap_or(Value::Null),
        },
        "minimality": env.minimality.as_ref().map(|m| json!({
            "policy": m.policy.label(),
            "input_minimal": m.input_minimal,
            "nonminimal_primes": m.nonminimal_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "transformation": m.transformation.as_ref().map(|t| json!({
                "u": vrat(&t.u), "r": vrat(&t.r), "s": vrat(&t.s), "t": vrat(&t.t),
            })).unwrap_or(Value::Null),
            "analyzed_coefficients": curve_json(&m.analyzed),
        })).unwrap_or(Value::Null),
        "invariants": env.invariants.as_ref().map(invariants_json).unwrap_or(Value::Null),
        "report": env.report.as_ref().map(|r| report_json(r, w3)).unwrap_or(Value::Null),
        "partial_primes": env.partial.as_ref().map(|ps| {
            Value::Array(ps.iter().map(|d| prime_json(d, w3)).collect())
        }).unwrap_or(Value::Null),
    })
}

/// Canonical single-line JSON rendering (sorted keys, stable integers).
pub fn envelope_to_json_string(env: &ReportEnvelope, opts: &AnalyzeOptions) -> String {
    serde_json::to_string(&envelope_to_json(env, opts)).expect("serializable")
}

fn disc_factored(per_prime: &[PrimeData], disc: &BigInt) -> String {
    use num_traits::Signed;
    let sign = if disc.is_negative() { "-" } else { "" };
    let parts: Vec<String> = per_prime
        .iter()
        .map(|d| {
            if d.v_disc == 1 {
                d.p.to_string()
            } else {
                format!("{}^{}", d.p, d.v_disc)
            }
        })
        .collect();
    if parts.is_empty() {
        format!("{disc}")
    } else {
        format!("{sign}{}", parts.join(" * "))
    }
}

/// Human-readable rendering of the envelope.
pub fn envelope_to_text(env: &ReportEnvelope, opts: &AnalyzeOptions) -> String {
    let w3 = opts.root_number_3.resolve();
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    match &env.label {
        Some(l) => push(&mut out, format!("curve: {} ({l})", env.raw.trim())),
        None => push(&mut out, format!("curve: {}", env.raw.trim())),
    }
    push(&mut out, format!("status: {}", env.status.label()));
    if let Some(e) = &env.error {
        push(&mut out, format!("error: {e}"));
    }
    if let Some(m) = &env.minimality {
        if m.transformation.is_some() {
            push(&mut out, format!("minimized to: {}", m.analyzed));
        }
    }
    if let Some(inv) = &env.invariants {
        let primes: &[PrimeData] = env
            .report
            .as_ref()
            .map(|r| r.per_prime.as_slice())
            .or(env.partial.as_deref())
            .unwrap_or(&[]);
        push(
            &mut out,
            format!("discriminant: {} = {}", inv.discriminant, disc_factored(primes, &inv.discriminant)),
        );
        push(&mut out, format!("c4 = {}, c6 = {}, j = {}", inv.c4, inv.c6, inv.j));
    }
    let primes = env
        .report
        .as_ref()
        .map(|r| r.per_prime.as_slice())
        .or(env.partial.as_deref());
    if let Some(primes) = primes {
        push(&mut out, "local data:".to_string());
        for d in primes {
            let mut line = format!("  p = {}: {}", d.p, d.reduction.label());
            if let (Some(c), Some(n)) = (d.q3_condition, d.neron_type) {
                line.push_str(&format!(" ({}, Neron {})", c.label(), n.label()));
            }
            match (&d.gl2, &d.sym3) {
                (Some(g), Some(s)) => {
                    line.push_str(&format!(
                        ", a(pi) = {}, sym3: k = {}, type {}, eps = {}, L = {}",
                        g.conductor_exponent,
                        s.conductor_exponent,
                        s.rep_type.label(),
                        match s.epsilon.resolve(w3) {
                            Some(v) => if v >= 0 { "+1".into() } else { "-1".into() },
                            None => s.epsilon.render(),
                        },
                        s.l_factor.display(),
                    ));
                }
                _ => line.push_str(", outside the classification tables"),
            }
            push(&mut out, line);
        }
    }
    if let Some(r) = &env.report {
        push(&mut out, format!("conductor N = {}", r.conductor));
        push(&mut out, format!("paramodular level M = {}", r.level));
        let signs: Vec<String> = r
            .atkin_lehner
            .iter()
            .map(|a| {
                let rendered = match a.resolved {
                    Some(v) => {
                        if v >= 0 {
                            "+1".to_string()
                        } else {
                            "-1".to_string()
                        }
                    }
                    None => a.sign.render(),
                };
                format!("eta_{} = {}", a.p, rendered)
            })
            .collect();
        push(&mut out, format!("atkin-lehner: {}", signs.join(", ")));
        push(&mut out, format!("completed L gamma factor: {GAMMA_FACTOR_NOTE}"));
        if r.cm {
            push(&mut out, "note: curve has complex multiplication".to_string());
        }
        for w in &r.warnings {
            push(&mut out, format!("warning: {w}"));
        }
    }
    out
}
