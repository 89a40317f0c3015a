//! Field-wise comparison of two `report.json` files.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{LabError, Result};
use crate::report::TIMING_FIELD;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffTolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for DiffTolerances {
    fn default() -> Self {
        Self { rel: 1e-12, abs: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Drift {
    /// JSON pointer of the differing field.
    pub path: String,
    pub left: Value,
    pub right: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDiff {
    pub kind: String,
    pub tolerances: DiffTolerances,
    pub compared_fields: usize,
    pub drift: Vec<Drift>,
    /// `|residual(left)| / |residual(right)|` of the sandglass closure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_residual_ratio: Option<f64>,
}

impl ReportDiff {
    pub fn is_empty(&self) -> bool {
        self.drift.is_empty()
    }
}

fn kind_of(v: &Value) -> String {
    v.pointer("/config/scenario/kind").and_then(Value::as_str).unwrap_or("<missing>").to_string()
}

pub fn compare_reports(left: &Value, right: &Value, tol: DiffTolerances) -> Result<ReportDiff> {
    let (lk, rk) = (kind_of(left), kind_of(right));
    if lk != rk || lk == "<missing>" {
        return Err(LabError::SchemaMismatch { left: lk, right: rk });
    }
    let mut diff = ReportDiff { kind: lk, tolerances: tol, compared_fields: 0, drift: Vec::new(), closure_residual_ratio: None };
    walk("", left, right, tol, &mut diff);
    if diff.kind == "sandglass" {
        let residual = |v: &Value| v.pointer("/artifacts/sandglass/checks/closure_residual").and_then(Value::as_f64);
        if let (Some(a), Some(b)) = (residual(left), residual(right)) {
            diff.closure_residual_ratio = Some(a.abs() / b.abs());
        }
    }
    Ok(diff)
}

fn numbers_close(a: f64, b: f64, tol: DiffTolerances) -> bool {
    a == b || (a - b).abs() <= tol.abs + tol.rel * a.abs().max(b.abs())
}

fn walk(path: &str, a: &Value, b: &Value, tol: DiffTolerances, diff: &mut ReportDiff) {
    let mut drift = || diff.drift.push(Drift { path: path.to_string(), left: a.clone(), right: b.clone() });
    match (a, b) {
        (Value::Object(ma), Value::Object(mb)) => {
            for (k, va) in ma {
                if path.is_empty() && k == TIMING_FIELD {
                    continue;
                }
                let child = format!("{path}/{}", k.replace('~', "~0").replace('/', "~1"));
                match mb.get(k) {
                    Some(vb) => walk(&child, va, vb, tol, diff),
                    None => diff.drift.push(Drift { path: child, left: va.clone(), right: Value::Null }),
                }
            }
            for (k, vb) in mb {
                if !ma.contains_key(k) && !(path.is_empty() && k == TIMING_FIELD) {
                    let child = format!("{path}/{}", k.replace('~', "~0").replace('/', "~1"));
                    diff.drift.push(Drift { path: child, left: Value::Null, right: vb.clone() });
                }
            }
        }
        (Value::Array(va), Value::Array(vb)) => {
            if va.len() != vb.len() {
                drift();
                return;
            }
            for (i, (x, y)) in va.iter().zip(vb).enumerate() {
                walk(&format!("{path}/{i}"), x, y, tol, diff);
            }
        }
        (Value::Number(x), Value::Number(y)) => {
            diff.compared_fields += 1;
            let (x, y) = (x.as_f64().unwrap_or(f64::NAN), y.as_f64().unwrap_or(f64::NAN));
            if !numbers_close(x, y, tol) {
                drift();
            }
        }
        _ => {
            diff.compared_fields += 1;
            if a != b {
                drift();
            }
        }
    }
}

pub fn load_report(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| LabError::Json { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn report(kind: &str, x: f64, t: f64) -> Value {
        json!({"config": {"scenario": {"kind": kind}}, "artifacts": {"x": x, "v": [1, 2]}, "wall_clock_seconds": t})
    }

    #[test]
    fn identical_reports_have_empty_diff() {
        let d = compare_reports(&report("tube", 1.0, 0.1), &report("tube", 1.0, 9.0), DiffTolerances::default()).unwrap();
        assert!(d.is_empty(), "{d:?}");
        assert!(d.compared_fields >= 3);
    }

    #[test]
    fn drift_is_located() {
        let d = compare_reports(&report("tube", 1.0, 0.1), &report("tube", 1.1, 0.1), DiffTolerances::default()).unwrap();
        assert_eq!(d.drift.len(), 1);
        assert_eq!(d.drift[0].path, "/artifacts/x");
        let loose = DiffTolerances { rel: 0.2, abs: 0.0 };
        assert!(compare_reports(&report("tube", 1.0, 0.1), &report("tube", 1.1, 0.1), loose).unwrap().is_empty());
    }

    #[test]
    fn kinds_must_match() {
        let err = compare_reports(&report("tube", 1.0, 0.1), &report("sandglass", 1.0, 0.1), DiffTolerances::default());
        assert!(matches!(err, Err(LabError::SchemaMismatch { .. })));
    }
}
