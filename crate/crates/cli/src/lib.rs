//! Problem descriptions, dispatch and report rendering for the `charclose`
//! binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use charclose_core::closure::{
    self, frobenius_member_at, frobenius_test_exponent, in_frobenius_closure,
    in_tight_closure_cubic, oracle_report,
};
use charclose_core::search::{search_min_exponents, SearchConfig, SearchTable};
use charclose_core::syzygy::{pullback_numerics, syzygy_numerics};
use charclose_core::{
    Bound, ClosureReport, CubicCone, Error, HomIdeal, Limits, Poly, SyzygyInfo,
};

pub const SCHEMA: &str = "charclose/1";
pub const DEFAULT_CURVE: &str = "x^3+y^3+z^3";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Validate,
    Hasse,
    FrobeniusMember,
    FrobeniusClosure,
    TightMember,
    Oracle,
    SyzygyInfo,
    Search,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Validate => "validate",
            Mode::Hasse => "hasse",
            Mode::FrobeniusMember => "frobenius-member",
            Mode::FrobeniusClosure => "frobenius-closure",
            Mode::TightMember => "tight-member",
            Mode::Oracle => "oracle",
            Mode::SyzygyInfo => "syzygy-info",
            Mode::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A complete query. Every report echoes the problem it ran, so a JSON report can
/// be fed back as a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProblemSpec {
    pub mode: Option<Mode>,
    pub p: Option<u32>,
    pub curve: String,
    pub ideal: Vec<String>,
    pub element: Option<String>,
    /// Oracle cap; defaults to `n + 1`.
    pub e_max: Option<u32>,
    pub degree_cap: Option<u64>,
    pub format: Format,
    pub seed: u64,
    /// Twist `m` for syzygy numerics.
    pub twist: i64,
    /// Frobenius exponent for the pull-back in syzygy-info.
    pub pullback: Option<u32>,
    pub samples: usize,
    pub min_generators: usize,
    pub max_generators: usize,
    pub max_degree: u32,
}

impl Default for ProblemSpec {
    fn default() -> Self {
        let search = SearchConfig::default();
        ProblemSpec {
            mode: None,
            p: None,
            curve: DEFAULT_CURVE.to_string(),
            ideal: Vec::new(),
            element: None,
            e_max: None,
            degree_cap: None,
            format: Format::Text,
            seed: 0,
            twist: 0,
            pullback: None,
            samples: search.samples,
            min_generators: search.min_generators,
            max_generators: search.max_generators,
            max_degree: search.max_degree,
        }
    }
}

impl ProblemSpec {
    /// Reads a problem file. Accepts either a bare problem or a report, whose
    /// `problem` field is used.
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Failure::usage(format!("problem file: {e}")))?;
        let value = match value.get("problem") {
            Some(inner) if value.get("schema").is_some() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(value).map_err(|e| Failure::usage(format!("problem file: {e}")))
    }
}

/// A failed run: exit code plus a classified message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(skip)]
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "usage".into(),
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            kind: "internal".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::DivisionByZero(_) => "division-by-zero",
            Error::NotPrime(_) => "not-prime",
            Error::ModulusMismatch { .. } => "modulus-mismatch",
            Error::Syntax { .. } | Error::UnknownVariable { .. } => "syntax",
            Error::NotHomogeneous(_) => "not-homogeneous",
            Error::ZeroGenerator => "zero-generator",
            Error::NotElliptic(_) => "not-elliptic",
            Error::NotPrimary => "not-primary",
            Error::TooFewGenerators { .. } => "too-few-generators",
            Error::DegreeCap { .. } => "degree-cap",
            Error::Budget(_) => "budget",
            Error::Overflow(_) => "overflow",
            Error::Internal(_) => "internal",
        };
        let code = match &e {
            Error::Internal(_) => 3,
            e if e.is_resource() => 2,
            _ => 1,
        };
        Failure {
            code,
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

/// Result of [`run`]: the exit code and what to print.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs a query and renders its report in the requested format.
pub fn run(spec: &ProblemSpec) -> Outcome {
    let result = execute(spec);
    let (code, report) = match result {
        Ok(report) => (report.code, Ok(report)),
        Err(failure) => (failure.code, Err(failure)),
    };
    match spec.format {
        Format::Json => {
            let mut doc = json!({
                "schema": SCHEMA,
                "mode": spec.mode.map(Mode::name),
                "seed": spec.seed,
                "problem": spec,
            });
            match report {
                Ok(r) => doc["report"] = r.json,
                Err(f) => doc["error"] = json!(f),
            }
            Outcome {
                code,
                stdout: format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")),
                stderr: String::new(),
            }
        }
        Format::Text => match report {
            Ok(r) => Outcome {
                code,
                stdout: format!("{}seed       {}\n", r.text, spec.seed),
                stderr: r.notes,
            },
            Err(f) => Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error ({}): {}\n", f.kind, f.message),
            },
        },
    }
}

struct Rendered {
    code: i32,
    json: Value,
    text: String,
    notes: String,
}

impl Rendered {
    fn ok(json: Value, text: String) -> Self {
        Rendered {
            code: 0,
            json,
            text,
            notes: String::new(),
        }
    }
}

fn ring(spec: &ProblemSpec) -> Result<CubicCone, Failure> {
    let p = spec.p.ok_or_else(|| Failure::usage("missing --p"))?;
    let cubic = Poly::parse(&spec.curve, p)?;
    let mut limits = Limits::default();
    if let Some(cap) = spec.degree_cap {
        limits.degree_cap = cap;
    }
    Ok(CubicCone::new(cubic)?.with_limits(limits))
}

fn ideal(ring: &CubicCone, spec: &ProblemSpec) -> Result<HomIdeal, Failure> {
    if spec.ideal.is_empty() {
        return Err(Failure::usage("missing --ideal"));
    }
    let gens = spec
        .ideal
        .iter()
        .map(|g| ring.parse(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ring.ideal(gens)?)
}

fn element(ring: &CubicCone, spec: &ProblemSpec) -> Result<Poly, Failure> {
    let text = spec
        .element
        .as_deref()
        .ok_or_else(|| Failure::usage("missing --element"))?;
    Ok(ring.parse(text)?)
}

fn execute(spec: &ProblemSpec) -> Result<Rendered, Failure> {
    let mode = spec.mode.ok_or_else(|| Failure::usage("missing mode"))?;
    let ring = ring(spec)?;
    match mode {
        Mode::Validate | Mode::Hasse => Ok(curve_report(&ring, mode)),
        Mode::FrobeniusMember | Mode::TightMember | Mode::Oracle => {
            let ideal = ideal(&ring, spec)?;
            let f = element(&ring, spec)?;
            let report = match mode {
                Mode::FrobeniusMember => in_frobenius_closure(&f, &ideal)?,
                Mode::TightMember => in_tight_closure_cubic(&f, &ideal)?,
                _ => {
                    let e_max = spec.e_max.unwrap_or(ideal.len() as u32 + 1);
                    oracle_report(&f, &ideal, e_max)?
                }
            };
            recheck(&report, &f, &ideal)?;
            Ok(element_report(&report, &f, &ideal))
        }
        Mode::FrobeniusClosure => {
            let ideal = ideal(&ring, spec)?;
            let (closure, report) = closure::frobenius_closure_report(&ideal)?;
            let minimal = closure.minimalize()?;
            Ok(closure_report(&report, &ideal, &closure, &minimal))
        }
        Mode::SyzygyInfo => {
            let ideal = ideal(&ring, spec)?;
            syzygy_report(&ideal, spec)
        }
        Mode::Search => Ok(search_report(&ring, spec)),
    }
}

/// Confirms a positive Frobenius verdict by an independent membership check at
/// the recorded exponent.
fn recheck(report: &ClosureReport, f: &Poly, ideal: &HomIdeal) -> Result<(), Failure> {
    if !report.verdict || matches!(report.bound, Bound::TestIdealExponent { .. }) {
        return Ok(());
    }
    let e = report
        .exponent
        .ok_or_else(|| Failure::internal("positive verdict without exponent"))?;
    if !frobenius_member_at(f, ideal, e)? {
        return Err(Failure::internal(format!(
            "re-verification of {f} at e = {e} failed"
        )));
    }
    Ok(())
}

fn curve_report(ring: &CubicCone, mode: Mode) -> Rendered {
    let hasse = ring.hasse().value();
    let kind = if ring.is_supersingular() {
        "supersingular"
    } else {
        "ordinary"
    };
    let json = json!({
        "valid": true,
        "p": ring.characteristic(),
        "curve": ring.cubic(),
        "genus": ring.genus(),
        "hasse": hasse,
        "supersingular": ring.is_supersingular(),
    });
    let mut text = String::new();
    if mode == Mode::Validate {
        let _ = writeln!(text, "valid      smooth plane cubic {} over F_{}", ring.cubic(), ring.characteristic());
    }
    let _ = writeln!(text, "hasse      {hasse} ({kind})");
    Rendered::ok(json, text)
}

fn ideal_text(gens: &[Poly]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn bound_text(bound: &Bound) -> String {
    match *bound {
        Bound::FrobeniusTestExponent { exponent } => {
            format!("n - 1 = {exponent} (Frobenius test exponent)")
        }
        Bound::TestIdealExponent { exponent, q, threshold } => {
            format!("e = {exponent}, q = {q} > 7(n - 1) = {threshold} (test ideal exponent)")
        }
        Bound::OracleCap { e_max } => format!("e <= {e_max} (exhaustive)"),
    }
}

fn element_report(report: &ClosureReport, f: &Poly, ideal: &HomIdeal) -> Rendered {
    let json = json!({
        "element": f,
        "ideal": ideal.generators(),
        "closure": report,
    });
    let mut text = String::new();
    let _ = writeln!(text, "{}: {}", mode_of(report), report.verdict);
    let _ = writeln!(text, "element    {f}");
    let _ = writeln!(text, "ideal      {}  n = {}", ideal_text(ideal.generators()), report.generators);
    let _ = writeln!(text, "bound      {}", bound_text(&report.bound));
    match (report.exponent, report.q) {
        (Some(e), Some(q)) => {
            let _ = writeln!(text, "exponent   e = {e}, q = {q}");
        }
        _ => {
            let _ = writeln!(text, "exponent   none found");
        }
    }
    if let Some(w) = report.witness {
        let _ = writeln!(
            text,
            "witness    {} * f^{} not in I^[{}] (e = {})",
            w.multiplier, w.q, w.q, w.exponent
        );
    }
    let _ = writeln!(text, "elapsed    {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
    Rendered::ok(json, text)
}

fn mode_of(report: &ClosureReport) -> &'static str {
    match report.kind {
        closure::QueryKind::FrobeniusMember => "frobenius-member",
        closure::QueryKind::FrobeniusClosure => "frobenius-closure",
        closure::QueryKind::TightMember => "tight-member",
        closure::QueryKind::Oracle => "oracle",
    }
}

fn closure_report(
    report: &ClosureReport,
    ideal: &HomIdeal,
    closure: &HomIdeal,
    minimal: &HomIdeal,
) -> Rendered {
    let json = json!({
        "ideal": ideal.generators(),
        "closure_generators": closure.generators(),
        "minimal_generators": minimal.generators(),
        "closure": report,
    });
    let mut text = String::new();
    let grows = if report.verdict { "grows" } else { "closed" };
    let _ = writeln!(text, "frobenius-closure: {grows}");
    let _ = writeln!(text, "ideal      {}  n = {}", ideal_text(ideal.generators()), report.generators);
    let _ = writeln!(text, "closure    {}", ideal_text(minimal.generators()));
    let _ = writeln!(text, "added      {}", ideal_text(&report.added_generators));
    let _ = writeln!(text, "bound      {}", bound_text(&report.bound));
    if let (Some(e), Some(q)) = (report.exponent, report.q) {
        let _ = writeln!(text, "exponent   e = {e}, q = {q}");
    }
    let _ = writeln!(text, "elapsed    {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
    Rendered::ok(json, text)
}

fn syzygy_text(label: &str, info: &SyzygyInfo) -> String {
    format!(
        "{label:<10} rank {}, degree {}, slope {}, twist {}, generator degrees {:?}\n",
        info.rank, info.degree, info.slope, info.twist, info.generator_degrees
    )
}

fn syzygy_report(ideal: &HomIdeal, spec: &ProblemSpec) -> Result<Rendered, Failure> {
    let info = syzygy_numerics(ideal, spec.twist)?;
    let mut json = json!({ "ideal": ideal.generators(), "syzygy": info });
    let mut text = syzygy_text("syzygy", &info);
    if let Some(e) = spec.pullback {
        let p = ideal.ring().characteristic();
        let pulled = pullback_numerics(&info, e, p)?;
        json["pullback"] = json!({ "exponent": e, "syzygy": pulled });
        text.push_str(&syzygy_text(&format!("pull-back e = {e}"), &pulled));
    }
    // The bound the closure decisions would apply to this ideal.
    if ideal.is_primary() {
        let b = frobenius_test_exponent(ideal)?;
        json["frobenius_test_exponent"] = json!(b);
        let _ = writeln!(text, "bound      n - 1 = {b}");
    }
    Ok(Rendered::ok(json, text))
}

fn search_report(ring: &CubicCone, spec: &ProblemSpec) -> Rendered {
    let config = SearchConfig {
        samples: spec.samples,
        min_generators: spec.min_generators,
        max_generators: spec.max_generators,
        max_degree: spec.max_degree,
        seed: spec.seed,
        e_max: spec.e_max,
        ..SearchConfig::default()
    };
    let table = search_min_exponents(ring, &config);
    let mut rendered = Rendered::ok(json!(table), search_text(&table));
    if !table.violations.is_empty() {
        rendered.code = 3;
        rendered.notes = table
            .violations
            .iter()
            .map(|v| format!("bound violated: {v}\n"))
            .collect();
    }
    rendered
}

fn search_text(table: &SearchTable) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "search: {} samples", table.samples.len());
    let _ = writeln!(text, "{:>3} {:>8} {:>9}  {:<24} {:>9} {:>8}", "n", "samples", "elements", "exponent: count", "not found", "failures");
    for (n, row) in &table.rows {
        let hist: Vec<String> = row.exponents.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        let _ = writeln!(
            text,
            "{n:>3} {:>8} {:>9}  {:<24} {:>9} {:>8}",
            row.samples,
            row.elements,
            hist.join(" "),
            row.not_found,
            row.failures
        );
    }
    let status = if table.violations.is_empty() {
        "every finite exponent <= n - 1".to_string()
    } else {
        format!("{} violations", table.violations.len())
    };
    let _ = writeln!(text, "bound      {status}");
    text
}
