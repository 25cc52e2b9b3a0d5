//! JSON and CSV encodings of core results.

use serde_json::{json, Map, Value};

use orlicz_core::domain::{DominationCertificate, Sampling, SubmultiplicativeReport};
use orlicz_core::young::{Delta2Certificate, GridCheck, PrecedenceCertificate};
use orlicz_core::{Counterexample, Hypothesis, InstanceRecord, LogGrid, NormResult, TheoremReport, Witness};

/// Non-finite floats become `null`.
fn num(x: f64) -> Value {
    Value::from(x)
}

pub fn grid(g: &LogGrid) -> Value {
    json!({ "lo": num(g.lo), "hi": num(g.hi), "points": g.points })
}

pub fn sampling(s: &Sampling) -> Value {
    json!({ "dim": s.dim, "samples": s.sample_count, "radius": num(s.radius), "seed": s.seed })
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Scalar(t) => json!({ "kind": "scalar", "value": num(*t) }),
        Witness::Point(x) => json!({ "kind": "point", "value": x.iter().map(|v| num(*v)).collect::<Vec<_>>() }),
        Witness::Pair { x, y } => json!({
            "kind": "pair",
            "x": x.iter().map(|v| num(*v)).collect::<Vec<_>>(),
            "y": y.iter().map(|v| num(*v)).collect::<Vec<_>>(),
        }),
        Witness::Function { index, label } => json!({ "kind": "function", "index": index, "label": label }),
    }
}

pub fn counterexample(c: &Counterexample) -> Value {
    json!({
        "witness": witness(&c.witness),
        "lhs": num(c.lhs),
        "rhs": num(c.rhs),
        "ratio": num(c.ratio),
        "constant": c.constant.map(num),
        "trend": c.trend.map(|t| t.as_str()),
    })
}

pub fn precedence(c: &PrecedenceCertificate) -> Value {
    json!({ "c": num(c.c), "grid": grid(&c.checked_grid), "max_ratio": num(c.max_ratio) })
}

pub fn delta2(c: &Delta2Certificate) -> Value {
    json!({ "k": num(c.k), "grid": grid(&c.grid) })
}

pub fn domination(c: &DominationCertificate) -> Value {
    json!({ "c": num(c.c), "sampling": sampling(&c.sampling), "max_ratio": num(c.max_ratio) })
}

pub fn submultiplicative(r: &SubmultiplicativeReport) -> Value {
    json!({
        "samples": r.samples,
        "max_ratio": num(r.max_ratio),
        "violation": r.violation.as_ref().map(counterexample),
    })
}

pub fn grid_check(g: &GridCheck) -> Value {
    json!({
        "points_checked": g.points_checked,
        "max_ratio": num(g.max_ratio),
        "first_violation": g.first_violation.as_ref().map(counterexample),
    })
}

pub fn hypothesis(h: &Hypothesis) -> Value {
    let body = match h {
        Hypothesis::Precedence { phi1, phi2, certificate } => json!({
            "phi1": phi1.to_string(), "phi2": phi2.to_string(), "certificate": precedence(certificate),
        }),
        Hypothesis::Domination { u1, u2, certificate } => json!({
            "u1": u1.to_string(), "u2": u2.to_string(), "certificate": domination(certificate),
        }),
        Hypothesis::Submultiplicative { u, report } => json!({
            "u": u.to_string(), "report": submultiplicative(report),
        }),
        Hypothesis::InverseProduct { phi1, phi2, phi3, check } => json!({
            "phi1": phi1.to_string(), "phi2": phi2.to_string(), "phi3": phi3.to_string(), "check": grid_check(check),
        }),
        Hypothesis::WeightProduct { u1, u2, u3, samples, max_ratio } => json!({
            "u1": u1.to_string(), "u2": u2.to_string(), "u3": u3.to_string(),
            "samples": samples, "max_ratio": num(*max_ratio),
        }),
        Hypothesis::WeightOrder { lower, upper, region, samples, max_ratio } => json!({
            "lower": lower.to_string(), "upper": upper.to_string(),
            "region": { "center": region.center(), "radius": num(region.radius()) },
            "samples": samples, "max_ratio": num(*max_ratio),
        }),
        Hypothesis::ExponentOrder { p1, p2 } => json!({ "p1": num(*p1), "p2": num(*p2) }),
    };
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(h.kind()));
    if let Value::Object(fields) = body {
        m.extend(fields);
    }
    Value::Object(m)
}

pub fn record(r: &InstanceRecord) -> Value {
    json!({
        "index": r.index,
        "label": r.label,
        "lhs": num(r.lhs),
        "rhs": num(r.rhs),
        "constant": num(r.constant),
        "ratio": num(r.ratio),
        "passed": r.passed,
        "degenerate": r.degenerate,
    })
}

pub fn report(r: &TheoremReport) -> Value {
    let params: Map<String, Value> = r.parameters.iter().map(|(k, v)| (k.clone(), num(*v))).collect();
    json!({
        "theorem": r.theorem,
        "instances": r.instances,
        "max_ratio": num(r.max_ratio),
        "witness": r.witness.as_ref().map(record),
        "verdict": r.verdict.as_str(),
        "hypotheses": r.hypotheses.iter().map(hypothesis).collect::<Vec<_>>(),
        "seed": r.seed,
        "degenerate": r.degenerate,
        "parameters": params,
        "records": r.records.iter().map(record).collect::<Vec<_>>(),
    })
}

pub fn norm(n: &NormResult) -> Value {
    json!({
        "value": num(n.value),
        "mode": n.mode.as_str(),
        "abs_error_estimate": num(n.abs_error_estimate),
        "bisection_iterations": n.bisection_iterations,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One row per instance record.
pub fn reports_csv(reports: &[TheoremReport]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem", "index", "label", "lhs", "rhs", "constant", "ratio", "passed", "degenerate"])?;
    for r in reports {
        for rec in &r.records {
            let v = record(rec);
            let mut row = vec![r.theorem.clone()];
            for k in ["index", "label", "lhs", "rhs", "constant", "ratio", "passed", "degenerate"] {
                row.push(cell(&v[k]));
            }
            w.write_record(&row)?;
        }
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

/// `field,value` rows for a single JSON object.
pub fn object_csv(v: &Value) -> Result<String, csv::Error> {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value"])?;
    for (k, x) in rows {
        w.write_record([k, x])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
}
