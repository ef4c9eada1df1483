//! Self-describing documents for the command-line tool. Every integer is
//! emitted as a decimal string.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{AffineAlgebra, AlgebraId, HveeInterp};
use crate::error::{Error, Result};
use crate::orbit::{DepthCensus, PermutationWeightCensus};
use crate::qseries::QSeries;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub algebra: String,
    pub payload: Value,
}

impl OutputDocument {
    pub fn new(command: &str, algebra: &str, payload: impl Serialize) -> Result<Self> {
        let payload = serde_json::to_value(payload).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(OutputDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            algebra: algebra.into(),
            payload: stringify_numbers(payload),
        })
    }

    pub fn to_json(&self) -> String {
        // object keys come out sorted, so identical inputs give identical bytes
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Plain-text rendering for terminals.
    pub fn render_pretty(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.algebra);
        render(&self.payload, 1, &mut out);
        out
    }
}

/// Replaces every JSON number by its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Array(items) if items.iter().all(is_scalar) => {
                        let row: Vec<String> = items.iter().map(scalar_text).collect();
                        out.push_str(&format!("{pad}{k}: {}\n", row.join(" ")));
                    }
                    v if is_scalar(v) => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v))),
                    v => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(item)));
                } else if let Some(row) = item.as_array().filter(|r| r.iter().all(is_scalar)) {
                    let row: Vec<String> = row.iter().map(scalar_text).collect();
                    out.push_str(&format!("{pad}- {}\n", row.join(" ")));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

/// One row of `list`.
pub fn algebra_summary(alg: &AffineAlgebra, interp: HveeInterp) -> Result<Value> {
    let spec = alg.eta_entry(interp)?;
    let factors: Vec<Value> = spec
        .factors
        .iter()
        .map(|f| json!([f.arg, f.power]))
        .collect();
    Ok(json!({
        "name": alg.id.to_string(),
        "twist": alg.id.twist(),
        "rank": alg.rank(),
        "coxeter_number": alg.affine.coxeter,
        "dual_coxeter_number": alg.affine.dual_coxeter,
        "weyl_order": alg.weyl_order().to_string(),
        "horizontal_type": alg.horizontal.finite_type.to_string(),
        "marks": alg.affine.marks,
        "comarks": alg.affine.comarks,
        "g": spec.notation(),
        "g_factors": factors,
        "phi": spec.phase,
        "multiplier": spec.multiplier.to_string(),
    }))
}

pub fn list_payload(ids: &[AlgebraId], interp: HveeInterp) -> Result<Value> {
    let rows = ids
        .iter()
        .map(|id| algebra_summary(&AffineAlgebra::new(*id)?, interp))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "hvee_interp": interp.name(), "algebras": rows }))
}

pub fn series_payload(source: &str, series: &QSeries, config: Map<String, Value>) -> Value {
    let doc = series.to_document();
    let mut m = Map::new();
    m.insert("source".into(), json!(source));
    m.insert("truncation".into(), json!(doc.truncation));
    m.insert("coefficients".into(), json!(doc.coefficients));
    m.extend(config);
    Value::Object(m)
}

pub fn census_payload(method: &str, census: &DepthCensus) -> Value {
    json!({
        "method": method,
        "max_depth": census.max_depth,
        "counts": census.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "c": census.c,
    })
}

pub fn records_payload(pw: &PermutationWeightCensus, words: bool) -> Value {
    let records: Vec<Value> = pw
        .records
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("depth".into(), json!(r.depth));
            m.insert("dominant".into(), json!(r.dominant.labels));
            m.insert("orbit_size".into(), json!(r.orbit_size.to_string()));
            if words {
                m.insert("word".into(), json!(r.sigma_word()));
            }
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("max_depth".into(), json!(pw.census.max_depth));
    m.insert("c".into(), json!(pw.census.c));
    if words {
        // word [i1, ..., ik] is sigma_i1 ... sigma_ik applied to the Weyl vector
        m.insert("word_order".into(), json!("product-rightmost-acts-first"));
    }
    m.insert("records".into(), Value::Array(records));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::count_via_permutation_weights;

    #[test]
    fn numbers_become_strings() {
        let v = stringify_numbers(json!({"a": 1, "b": [2, -3, {"c": 4}], "d": "x", "e": true}));
        assert_eq!(
            v,
            json!({"a": "1", "b": ["2", "-3", {"c": "4"}], "d": "x", "e": true})
        );
    }

    #[test]
    fn document_has_no_bare_numbers() {
        let alg = AffineAlgebra::parse("E6~1").unwrap();
        let pw = count_via_permutation_weights(&alg, 3).unwrap();
        let doc = OutputDocument::new("permw", "E6~1", records_payload(&pw, true)).unwrap();
        let text = doc.to_json();
        let back: Value = serde_json::from_str(&text).unwrap();
        fn no_numbers(v: &Value) -> bool {
            match v {
                Value::Number(_) => false,
                Value::Array(a) => a.iter().all(no_numbers),
                Value::Object(m) => m.values().all(no_numbers),
                _ => true,
            }
        }
        assert!(no_numbers(&back));
        assert_eq!(back["payload"]["c"], json!(["1", "1", "1", "1"]));
    }

    #[test]
    fn list_row_for_e6() {
        let alg = AffineAlgebra::parse("E6~1").unwrap();
        let row = stringify_numbers(algebra_summary(&alg, HveeInterp::Affine).unwrap());
        assert_eq!(row["g"], json!("12^7 6^-1 4^-1 3^1 2^1 1^-1"));
        assert_eq!(row["phi"], json!("-78"));
        assert_eq!(row["weyl_order"], json!("51840"));
    }

    #[test]
    fn pretty_rendering_is_flat_for_rows() {
        let doc = OutputDocument::new("orbit", "A1~1", json!({"counts": [2, 2, 0]})).unwrap();
        assert_eq!(doc.render_pretty(), "orbit A1~1\n  counts: 2 2 0\n");
    }
}
