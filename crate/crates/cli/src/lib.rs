//! Front end for `hbl-core`: problem documents (JSON or a small loop-nest
//! language), the analyze / tile / verify pipelines, and their reports.

pub mod document;
pub mod dsl;
mod error;
pub mod report;

use std::str::FromStr;

use hbl_core::constraints::DEFAULT_MAX_CLOSURE;
use hbl_core::tiler::{plan, tiling_for, LatticeStep, PlanOptions, TileGroup, TileSpec, TilingResult};
use hbl_core::verifier::{cover_report, hbl_bound_holds, image_counts_of, tile_points, verify_plan};
use hbl_core::verifier::{SampleCounts, VerificationReport, VerifyOptions};
use hbl_core::{BigInt, BigUint, HblProblem, Rational, DEFAULT_BUDGET};
use serde_json::Value;

pub use document::{MapEntry, ProblemDocument};
pub use error::{exit, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_closure: usize,
    pub budget: u64,
    /// Treat an incomplete constraint list as an error.
    pub strict: bool,
    /// Window half-width for the cover check; `None` skips it.
    pub radius: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_closure: DEFAULT_MAX_CLOSURE, budget: DEFAULT_BUDGET, strict: false, radius: Some(6) }
    }
}

impl Options {
    fn plan(&self) -> PlanOptions {
        PlanOptions { max_closure: self.max_closure, budget: self.budget }
    }
}

pub fn run_analyze(doc: &ProblemDocument, opts: &Options) -> Result<Value, CliError> {
    let p = doc.to_problem()?;
    let r = plan(&p, &opts.plan())?;
    Ok(report::analysis(&p, &r))
}

pub fn run_tile(doc: &ProblemDocument, m: u64, opts: &Options) -> Result<Value, CliError> {
    let p = doc.to_problem()?;
    let r = plan(&p, &opts.plan())?;
    let t = tiling_for(&p, &r, m, &opts.plan())?;
    let mut out = report::analysis(&p, &r);
    let (mut tile, translations) = report::tiling(&t, Some(r.construction));
    tile["requested_memory"] = m.into();
    out["tile"] = tile;
    out["translations"] = translations;
    Ok(out)
}

/// Plans and checks a tiling for every memory value, or checks the tiling
/// given in `tiling` (a previous `tile` report) when present.
pub fn run_verify(doc: &ProblemDocument, ms: &[u64], tiling: Option<&str>, opts: &Options) -> Result<Value, CliError> {
    let p = doc.to_problem()?;
    let Some(text) = tiling else {
        let vopts = VerifyOptions { plan: opts.plan(), budget: opts.budget, cover_radius: opts.radius, ..Default::default() };
        let (r, v) = verify_plan(&p, ms, &vopts)?;
        let mut out = report::analysis(&p, &r);
        let t = tiling_for(&p, &r, ms[0], &opts.plan())?;
        let (mut tile, translations) = report::tiling(&t, Some(r.construction));
        tile["requested_memory"] = ms[0].into();
        out["tile"] = tile;
        out["translations"] = translations;
        out["verification"] = report::verification(&p, &v);
        return Ok(out);
    };
    let t = parse_tiling(text)?;
    if t.spec.dim() != p.dim() {
        return Err(CliError::Input(format!("tiling has dimension {}, problem has {}", t.spec.dim(), p.dim())));
    }
    let r = plan(&p, &opts.plan())?;
    let v = verify_tiling(&p, &t, &r.analysis.primal.s, opts)?;
    let mut out = report::analysis(&p, &r);
    let (tile, translations) = report::tiling(&t, None);
    out["tile"] = tile;
    out["translations"] = translations;
    out["verification"] = report::verification(&p, &v);
    Ok(out)
}

fn verify_tiling(p: &HblProblem, t: &TilingResult, s: &[Rational], opts: &Options) -> Result<VerificationReport, CliError> {
    let points = tile_points(&t.spec, opts.budget)?;
    let image_counts = image_counts_of(&points, p)?;
    let point_count = points.len() as u64;
    let hbl_bound = hbl_bound_holds(point_count, &image_counts, s)?;
    let cover = opts.radius.map(|r| cover_report(t, r, opts.budget)).transpose()?;
    Ok(VerificationReport {
        samples: vec![SampleCounts { memory: t.spec.memory(), point_count, image_counts, hbl_bound }],
        cover,
        exponent_fits: Vec::new(),
        exact_optimality: Vec::new(),
        notices: Vec::new(),
    })
}

fn bad(what: &str) -> CliError {
    CliError::Input(format!("tiling: {what}"))
}

fn parse_int(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("non-integer coordinate")),
        Value::String(s) => BigInt::from_str(s).map_err(|_| bad("non-integer coordinate")),
        _ => Err(bad("coordinates must be integers")),
    }
}

fn parse_vector(v: &Value) -> Result<Vec<BigInt>, CliError> {
    v.as_array().ok_or_else(|| bad("expected an integer vector"))?.iter().map(parse_int).collect()
}

fn parse_vectors(v: &Value) -> Result<Vec<Vec<BigInt>>, CliError> {
    v.as_array().ok_or_else(|| bad("expected a list of vectors"))?.iter().map(parse_vector).collect()
}

fn parse_rational(v: &Value) -> Result<Rational, CliError> {
    let s = v.get("exact").unwrap_or(v).as_str().ok_or_else(|| bad("scalings must be \"p/q\" strings"))?;
    Rational::from_str(s).map_err(|_| bad("malformed rational"))
}

/// Reads the `tile` and `translations` sections of a `tile` report.
pub fn parse_tiling(text: &str) -> Result<TilingResult, CliError> {
    let v: Value = serde_json::from_str(text)?;
    let tile = &v["tile"];
    let tr = &v["translations"];
    let dim = tile["dimension"].as_u64().ok_or_else(|| bad("missing tile.dimension"))? as usize;
    let memory = tile["memory"].as_u64().ok_or_else(|| bad("missing tile.memory"))?;
    let groups = tile["groups"]
        .as_array()
        .ok_or_else(|| bad("missing tile.groups"))?
        .iter()
        .map(|g| Ok(TileGroup::new(parse_vectors(&g["elements"])?, parse_rational(&g["scaling"])?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let spec = TileSpec::new(dim, groups, memory)?;
    let t1 = tr["t1"]
        .as_array()
        .ok_or_else(|| bad("missing translations.t1"))?
        .iter()
        .map(|s| {
            let step = s["step"].as_str().and_then(|x| BigUint::from_str(x).ok()).ok_or_else(|| bad("malformed step"))?;
            Ok(LatticeStep { element: parse_vector(&s["element"])?, step })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let t2 = parse_vectors(&tr["t2"])?;
    let t3 = parse_vectors(&tr["t3"])?;
    let invariant_factors = tr["invariant_factors"]
        .as_array()
        .ok_or_else(|| bad("missing translations.invariant_factors"))?
        .iter()
        .map(parse_int)
        .collect::<Result<Vec<_>, _>>()?;
    if t1.len() + t2.len() != dim {
        return Err(bad("T1 and T2 must together have one generator per dimension"));
    }
    if t1.iter().any(|s| s.element.len() != dim) || t2.iter().chain(&t3).any(|x| x.len() != dim) {
        return Err(bad("translation vectors have the wrong length"));
    }
    Ok(TilingResult { spec, t1, t2, t3, invariant_factors })
}

/// Exit status for a report that was produced successfully.
pub fn report_status(report: &Value, opts: &Options) -> i32 {
    if report["verification"]["passed"] == Value::Bool(false) {
        return exit::VERIFICATION;
    }
    if opts.strict && report["constraints"]["completeness"] == "partial" {
        return exit::PARTIAL;
    }
    0
}
