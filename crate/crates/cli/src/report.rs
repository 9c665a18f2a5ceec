//! Canonical JSON reports. Keys are sorted, rationals are `"p/q"` strings and
//! always come with a decimal rendering.

use hbl_core::intlinalg::Subgroup;
use hbl_core::lp::{DualVector, GammaEnclosure};
use hbl_core::tiler::{AnalysisReport, Construction, TilingResult};
use hbl_core::verifier::VerificationReport;
use hbl_core::{BigInt, HblProblem, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use hbl_core::constraints::{Completeness, Method};

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn decimal(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// `{"exact": "p/q", "decimal": x}`
pub fn rational(x: &Rational) -> Value {
    json!({ "exact": x.to_string(), "decimal": decimal(x.to_f64().unwrap_or(f64::NAN)) })
}

fn subgroup(h: &Subgroup) -> Value {
    Value::Array(h.generators().iter().map(|g| vector(g)).collect())
}

fn weighted(y: &DualVector) -> Value {
    Value::Array(
        y.iter()
            .map(|(h, v)| json!({ "subgroup": subgroup(h), "rank": h.rank(), "value": rational(v) }))
            .collect(),
    )
}

fn gamma(g: &GammaEnclosure) -> Value {
    json!({
        "ln_lower": decimal(g.ln_lower),
        "ln_upper": decimal(g.ln_upper),
        "lower": decimal(g.lower()),
        "upper": decimal(g.upper()),
        "converged": g.converged,
        "exact_minimizer": g.exact_minimizer.as_ref().map(|s| s.iter().map(rational).collect::<Vec<_>>()),
    })
}

fn completeness(c: Completeness) -> &'static str {
    match c {
        Completeness::Complete => "complete",
        Completeness::Partial => "partial",
    }
}

fn method(m: Method) -> &'static str {
    match m {
        Method::CoordinateProjections => "coordinate-projections",
        Method::FewMaps => "few-maps",
        Method::KernelClosure => "kernel-closure",
        Method::FullSpaceOnly => "full-space-only",
    }
}

/// Report with every top-level key present; tiling and verification parts are `null`.
pub fn analysis(p: &HblProblem, r: &AnalysisReport) -> Value {
    let a = &r.analysis;
    let names = p.names();
    let s: Vec<Value> =
        a.primal.s.iter().zip(names).map(|(x, n)| json!({ "map": n, "value": rational(x) })).collect();
    let split = r
        .split
        .as_ref()
        .map(|c| c.iter().zip(names).map(|(x, n)| json!({ "map": n, "value": rational(x) })).collect::<Vec<_>>());
    json!({
        "s_hbl": rational(r.s_hbl()),
        "primal": {
            "status": "optimal",
            "s": s,
            "gamma": r.gamma.as_ref().map(gamma),
            "split": split,
        },
        "dual": {
            "support": weighted(&a.dual),
            "value": rational(&a.dual.value()),
            "flag": weighted(&a.flag_dual),
            "decomposition": a.decomposition.ys.iter().zip(&a.decomposition.scalings)
                .map(|(y, k)| json!({ "subgroup": subgroup(y), "rank": y.rank(), "scaling": rational(k) }))
                .collect::<Vec<_>>(),
        },
        "constraints": {
            "count": a.constraints.len(),
            "completeness": completeness(a.constraints.completeness),
            "method": method(a.constraints.method),
            "cap": a.constraints.cap_hit,
        },
        "tile": { "construction": r.construction.name(), "exact": r.construction.is_exact() },
        "translations": Value::Null,
        "verification": Value::Null,
        "warnings": a.warnings,
    })
}

/// The `tile` and `translations` sections for a tiling.
pub fn tiling(t: &TilingResult, construction: Option<Construction>) -> (Value, Value) {
    let spec = &t.spec;
    let groups: Vec<Value> = spec
        .groups()
        .iter()
        .zip(spec.group_sides())
        .map(|(g, side)| {
            json!({
                "elements": g.elements.iter().map(|e| vector(e)).collect::<Vec<_>>(),
                "scaling": rational(&g.scaling),
                "side": side.to_string(),
            })
        })
        .collect();
    let mut tile = json!({
        "dimension": spec.dim(),
        "memory": spec.memory(),
        "groups": groups,
        "scalings": spec.element_scalings().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "point_count": spec.point_count().to_string(),
        "size_exponent": rational(&spec.size_exponent()),
    });
    if let Some(c) = construction {
        tile["construction"] = json!(c.name());
        tile["exact"] = json!(c.is_exact());
    }
    let translations = json!({
        "t1": t.t1.iter().map(|s| json!({ "element": vector(&s.element), "step": s.step.to_string() })).collect::<Vec<_>>(),
        "t2": t.t2.iter().map(|v| vector(v)).collect::<Vec<_>>(),
        "t3": t.t3.iter().map(|v| vector(v)).collect::<Vec<_>>(),
        "invariant_factors": t.invariant_factors.iter().map(int).collect::<Vec<_>>(),
    });
    (tile, translations)
}

pub fn verification(p: &HblProblem, v: &VerificationReport) -> Value {
    let names = p.names();
    let samples: Vec<Value> = v
        .samples
        .iter()
        .map(|s| {
            let images: serde_json::Map<String, Value> =
                names.iter().cloned().zip(s.image_counts.iter().map(|&c| json!(c))).collect();
            json!({
                "memory": s.memory,
                "point_count": s.point_count,
                "image_counts": images,
                "hbl_bound": s.hbl_bound,
            })
        })
        .collect();
    let cover = v.cover.as_ref().map(|c| {
        json!({
            "radius": c.radius,
            "window_points": c.window_points,
            "uncovered": c.uncovered,
            "multiply_covered": c.multiply_covered,
            "translates_examined": c.translates_examined,
            "exact": c.is_exact(),
        })
    });
    let fits: Vec<Value> = v
        .exponent_fits
        .iter()
        .map(|f| {
            json!({
                "quantity": f.quantity,
                "slope": decimal(f.fit.slope),
                "residual": decimal(f.fit.residual),
                "target": decimal(f.target),
                "ok": f.ok,
            })
        })
        .collect();
    let exact: Vec<Value> = v
        .exact_optimality
        .iter()
        .map(|e| {
            json!({
                "memory": e.memory,
                "point_count": e.point_count,
                "memory_sum": e.memory_sum,
                "within_memory": e.within_memory,
                "ratio": decimal(e.ratio),
            })
        })
        .collect();
    json!({
        "samples": samples,
        "cover": cover,
        "exponent_fits": fits,
        "exact_optimality": exact,
        "notices": v.notices,
        "passed": v.passed(),
    })
}

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Value) -> String {
    let mut out = String::new();
    let mut line = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    line(format!("s_HBL = {} ({})", s(&r["s_hbl"]["exact"]), s(&r["s_hbl"]["decimal"])));
    if let Some(xs) = r["primal"]["s"].as_array() {
        let parts: Vec<String> = xs.iter().map(|x| format!("{}={}", s(&x["map"]), s(&x["value"]["exact"]))).collect();
        line(format!("primal s: {}", parts.join(", ")));
    }
    let c = &r["constraints"];
    line(format!("constraints: {} subgroups, {} ({})", s(&c["count"]), s(&c["completeness"]), s(&c["method"])));
    if let Some(ys) = r["dual"]["flag"].as_array() {
        for y in ys {
            line(format!("flag member rank {}: y = {}", s(&y["rank"]), s(&y["value"]["exact"])));
        }
    }
    if !r["primal"]["gamma"].is_null() {
        let g = &r["primal"]["gamma"];
        line(format!("gamma in [{}, {}]", s(&g["lower"]), s(&g["upper"])));
    }
    let t = &r["tile"];
    line(format!("construction: {} (exact: {})", s(&t["construction"]), s(&t["exact"])));
    if !t["memory"].is_null() {
        let scalings: Vec<String> = t["scalings"].as_array().map_or(vec![], |a| a.iter().map(s).collect());
        let m = if t["requested_memory"].is_null() { &t["memory"] } else { &t["requested_memory"] };
        line(format!("tile at M = {}: {} points, scalings [{}]", s(m), s(&t["point_count"]), scalings.join(", ")));
        let tr = &r["translations"];
        let len = |k: &str| tr[k].as_array().map_or(0, Vec::len);
        line(format!("translations: |T1 gens| = {}, |T2| = {}, |T3| = {}", len("t1"), len("t2"), len("t3")));
    }
    let v = &r["verification"];
    if !v.is_null() {
        if let Some(samples) = v["samples"].as_array() {
            for x in samples {
                line(format!(
                    "M = {}: |S| = {}, images {}, hbl bound {}",
                    s(&x["memory"]),
                    s(&x["point_count"]),
                    x["image_counts"],
                    s(&x["hbl_bound"])
                ));
            }
        }
        if !v["cover"].is_null() {
            let c = &v["cover"];
            line(format!(
                "cover on radius {}: {} uncovered, {} covered more than once",
                s(&c["radius"]),
                s(&c["uncovered"]),
                s(&c["multiply_covered"])
            ));
        }
        for f in v["exponent_fits"].as_array().into_iter().flatten() {
            line(format!("exponent of {}: {} (target {}, ok {})", s(&f["quantity"]), s(&f["slope"]), s(&f["target"]), s(&f["ok"])));
        }
        for e in v["exact_optimality"].as_array().into_iter().flatten() {
            line(format!(
                "M = {}: memory sum {} (within: {}), ratio {}",
                s(&e["memory"]),
                s(&e["memory_sum"]),
                s(&e["within_memory"]),
                s(&e["ratio"])
            ));
        }
        for n in v["notices"].as_array().into_iter().flatten() {
            line(format!("notice: {}", s(n)));
        }
        line(format!("verification passed: {}", s(&v["passed"])));
    }
    for w in r["warnings"].as_array().into_iter().flatten() {
        line(format!("warning: {}", s(w)));
    }
    out
}
