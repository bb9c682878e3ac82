//! Report records and canonical JSON: object keys sorted, floats printed with
//! a fixed 17 significant digits, so byte-identical runs diff cleanly.

use serde_json::{json, Map, Value};

use loewner::classifier::{PowerSet, SetComponent};
use loewner::{CertificateSource, SymmetricMatrix, Vector, Verdict, ViolationCertificate};

/// Canonical rendering of a JSON value.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                write_float(out, n.as_f64().unwrap_or(f64::NAN));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("strings serialize"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            // sort explicitly so the output does not depend on the map flavor
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("strings serialize"));
                out.push(':');
                write_value(out, &map[key.as_str()]);
            }
            out.push('}');
        }
    }
}

fn write_float(out: &mut String, x: f64) {
    if !x.is_finite() {
        out.push_str("null");
        return;
    }
    out.push_str(&format!("{x:.16e}"));
}

/// The envelope every command emits in JSON mode.
pub fn report(command: &str, parameters: Value, results: Value, seed: Option<u64>) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("parameters".into(), parameters);
    map.insert("results".into(), results);
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("seed".into(), seed.map_or(Value::Null, |s| json!(s)));
    Value::Object(map)
}

pub fn matrix_json(m: &SymmetricMatrix) -> Value {
    m.to_json()
}

pub fn vector_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

pub fn certificate_json(cert: &ViolationCertificate) -> Value {
    let matrices: Map<String, Value> =
        cert.matrices.iter().map(|(role, m)| (role.clone(), matrix_json(m))).collect();
    let source = match &cert.source {
        CertificateSource::Deterministic(name) => json!({"type": "deterministic", "name": name}),
        CertificateSource::Sampled { seed, index } => {
            json!({"type": "sampled", "seed": seed, "index": index})
        }
    };
    json!({
        "property": cert.property.label(),
        "lambda": cert.lambda,
        "witness": vector_json(&cert.witness),
        "quadratic_form_value": cert.quadratic_form_value,
        "source": source,
        "matrices": Value::Object(matrices),
    })
}

pub fn verdict_json(verdict: &Verdict) -> Value {
    match verdict {
        Verdict::ViolationFound(cert) => json!({
            "outcome": "violation-found",
            "certificate": certificate_json(cert),
        }),
        Verdict::NoViolationFound { samples_used, samples_skipped } => json!({
            "outcome": "no-violation-found",
            "samples_used": samples_used,
            "samples_skipped": samples_skipped,
        }),
    }
}

fn component_json(c: &SetComponent) -> Value {
    match c {
        SetComponent::Ray { start, closed } => json!({
            "type": "ray",
            "start": if start.is_finite() { json!(start) } else { Value::Null },
            "closed": closed,
        }),
        SetComponent::IntegerProgression { start, step } => {
            json!({"type": "integers", "start": start, "step": step})
        }
        SetComponent::Interval { lo, hi, lo_closed, hi_closed } => json!({
            "type": "interval",
            "lo": if lo.is_finite() { json!(lo) } else { Value::Null },
            "hi": if hi.is_finite() { json!(hi) } else { Value::Null },
            "lo_closed": lo_closed,
            "hi_closed": hi_closed,
        }),
        SetComponent::FinitePoints(points) => json!({"type": "points", "values": points}),
    }
}

pub fn power_set_json(set: &PowerSet) -> Value {
    json!({
        "components": set.components().iter().map(component_json).collect::<Vec<_>>(),
        "unknown": set.unknown_components().iter().map(component_json).collect::<Vec<_>>(),
        "display": set.to_string(),
    })
}
