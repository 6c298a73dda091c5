//! Check results and their deterministic serialization.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Data for a claim whose reproduction depends on an unresolved convention.
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Report => "report",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub claim: String,
    pub status: Status,
    pub residual_max: String,
    pub witness: Option<String>,
    pub convention: Option<String>,
    pub q_values: Vec<String>,
    pub elapsed_ms: String,
    /// For `report` checks: whether the computed value reproduces the published target.
    pub target_match: Option<bool>,
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>, claim: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            claim: claim.into(),
            status: Status::Pass,
            residual_max: "0".into(),
            witness: None,
            convention: None,
            q_values: Vec::new(),
            elapsed_ms: "0".into(),
            target_match: None,
            details: BTreeMap::new(),
        }
    }

    /// Exact check: passes iff no witness was found.
    pub fn exact(mut self, witness: Option<String>, residual: f64) -> Self {
        match witness {
            None => {
                self.status = Status::Pass;
                self.residual_max = "0".into();
            }
            Some(w) => {
                self.status = Status::Fail;
                self.residual_max = format_residual(residual);
                self.witness = Some(w);
            }
        }
        self
    }

    /// Numeric check against a tolerance.
    pub fn numeric(mut self, residual: f64, tol: f64) -> Self {
        self.residual_max = format_residual(residual);
        self.status = if residual <= tol { Status::Pass } else { Status::Fail };
        self
    }

    pub fn as_report(mut self, target_match: bool) -> Self {
        self.status = Status::Report;
        self.target_match = Some(target_match);
        self
    }

    pub fn with_status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual_max = format_residual(r);
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_convention(mut self, c: impl Into<String>) -> Self {
        self.convention = Some(c.into());
        self
    }

    pub fn with_q_values(mut self, qs: Vec<String>) -> Self {
        self.q_values = qs;
        self
    }

    pub fn detail(mut self, k: impl Into<String>, v: impl Into<String>) -> Self {
        self.details.insert(k.into(), v.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check_id": self.check_id,
            "claim": self.claim,
            "status": self.status.to_string(),
            "residual_max": self.residual_max,
            "witness": self.witness,
            "convention": self.convention,
            "q_values": self.q_values,
            "elapsed_ms": self.elapsed_ms,
            "target_match": self.target_match,
            "details": self.details,
        })
    }
}

/// "0" for an exact zero, otherwise six-digit scientific notation.
pub fn format_residual(r: f64) -> String {
    if r == 0.0 {
        "0".into()
    } else if r.is_nan() {
        "nan".into()
    } else if r.is_infinite() {
        "inf".into()
    } else {
        format!("{r:.6e}")
    }
}

/// Inverse of [`format_residual`].
pub fn parse_residual(s: &str) -> Option<f64> {
    match s {
        "nan" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        _ => s.parse().ok(),
    }
}

/// Full report: run metadata plus checks sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(config: BTreeMap<String, Value>, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Self { config, checks }
    }

    pub fn to_json(&self) -> Value {
        let mut counts = BTreeMap::new();
        for c in &self.checks {
            *counts.entry(c.status.to_string()).or_insert(0usize) += 1;
        }
        let counts: BTreeMap<String, String> = counts.into_iter().map(|(k, v)| (k, v.to_string())).collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "summary": counts,
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<6} {}  residual={}", c.status, c.check_id, c.residual_max));
            if let Some(conv) = &c.convention {
                out.push_str(&format!(" convention={conv}"));
            }
            if let Some(t) = c.target_match {
                out.push_str(&format!(" target_match={t}"));
            }
            out.push('\n');
            if c.status == Status::Fail {
                if let Some(w) = &c.witness {
                    out.push_str(&format!("       witness: {w}\n"));
                }
            }
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "{} pass, {} fail, {} report\n",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Report)
        ));
        out
    }

    pub fn from_json(v: &Value) -> Result<Self, SchemaError> {
        validate_report(v)?;
        let config = v["config"]
            .as_object()
            .map(|m| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
            .unwrap_or_default();
        let checks = v["checks"]
            .as_array()
            .expect("validated")
            .iter()
            .map(|c| serde_json::from_value(c.clone()).map_err(|e| SchemaError(e.to_string())))
            .collect::<Result<Vec<CheckReport>, _>>()?;
        Ok(Self { config, checks })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("report schema violation: {0}")]
pub struct SchemaError(pub String);

/// Structural validation of a serialized report.
pub fn validate_report(v: &Value) -> Result<(), SchemaError> {
    let err = |m: String| Err(SchemaError(m));
    let Some(top) = v.as_object() else {
        return err("top level is not an object".into());
    };
    for key in ["schema_version", "config", "summary", "checks"] {
        if !top.contains_key(key) {
            return err(format!("missing key {key}"));
        }
    }
    if top.len() != 4 {
        return err("unexpected top-level keys".into());
    }
    if v["schema_version"] != Value::String(SCHEMA_VERSION.into()) {
        return err(format!("schema_version is not \"{SCHEMA_VERSION}\""));
    }
    if !v["config"].is_object() || !v["summary"].is_object() {
        return err("config and summary must be objects".into());
    }
    let Some(checks) = v["checks"].as_array() else {
        return err("checks is not an array".into());
    };
    let mut prev: Option<&str> = None;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in checks {
        let Some(obj) = c.as_object() else {
            return err("check is not an object".into());
        };
        const FIELDS: [&str; 10] = [
            "check_id",
            "claim",
            "status",
            "residual_max",
            "witness",
            "convention",
            "q_values",
            "elapsed_ms",
            "target_match",
            "details",
        ];
        if obj.len() != FIELDS.len() || FIELDS.iter().any(|f| !obj.contains_key(*f)) {
            return err(format!("check fields differ from schema: {:?}", obj.keys().collect::<Vec<_>>()));
        }
        let id = c["check_id"].as_str().ok_or_else(|| SchemaError("check_id not a string".into()))?;
        if let Some(p) = prev {
            if p >= id {
                return err(format!("check ids not strictly increasing at {id}"));
            }
        }
        prev = Some(id);
        let status = c["status"].as_str().unwrap_or("");
        if !matches!(status, "pass" | "fail" | "report") {
            return err(format!("{id}: bad status {status:?}"));
        }
        *counts.entry(status).or_default() += 1;
        match c["residual_max"].as_str() {
            Some(r) if parse_residual(r).is_some() => {}
            _ => return err(format!("{id}: residual_max is not a decimal string")),
        }
        match c["elapsed_ms"].as_str() {
            Some(e) if e.parse::<u64>().is_ok() => {}
            _ => return err(format!("{id}: elapsed_ms is not an integer string")),
        }
        for k in ["witness", "convention"] {
            if !(c[k].is_null() || c[k].is_string()) {
                return err(format!("{id}: {k} must be a string or null"));
            }
        }
        if !(c["target_match"].is_null() || c["target_match"].is_boolean()) {
            return err(format!("{id}: target_match must be a boolean or null"));
        }
        if status != "report" && !c["target_match"].is_null() {
            return err(format!("{id}: target_match is only meaningful for report status"));
        }
        if !c["q_values"].as_array().is_some_and(|a| a.iter().all(Value::is_string)) {
            return err(format!("{id}: q_values must be an array of strings"));
        }
        if !c["details"].as_object().is_some_and(|m| m.values().all(Value::is_string)) {
            return err(format!("{id}: details must map to strings"));
        }
    }
    let summary = v["summary"].as_object().expect("checked");
    for (k, n) in summary {
        let want = counts.get(k.as_str()).copied().unwrap_or(0).to_string();
        if n.as_str() != Some(want.as_str()) {
            return err(format!("summary count for {k} disagrees with checks"));
        }
    }
    if counts.keys().any(|k| !summary.contains_key(*k)) {
        return err("summary is missing a status".into());
    }
    Ok(())
}

/// Check ids whose status changed, or whose residual moved by more than `tol`.
pub fn diff_reports(a: &Report, b: &Report, tol: f64) -> Vec<String> {
    let index = |r: &Report| -> BTreeMap<String, CheckReport> {
        r.checks.iter().map(|c| (c.check_id.clone(), c.clone())).collect()
    };
    let (ia, ib) = (index(a), index(b));
    let mut out = Vec::new();
    for (id, ca) in &ia {
        match ib.get(id) {
            None => out.push(format!("{id}: only in first")),
            Some(cb) => {
                if ca.status != cb.status {
                    out.push(format!("{id}: status {} -> {}", ca.status, cb.status));
                } else {
                    let ra = parse_residual(&ca.residual_max).unwrap_or(f64::NAN);
                    let rb = parse_residual(&cb.residual_max).unwrap_or(f64::NAN);
                    let same = ra == rb || (ra - rb).abs() <= tol || (ra.is_nan() && rb.is_nan());
                    if !same {
                        out.push(format!("{id}: residual {} -> {}", ca.residual_max, cb.residual_max));
                    }
                }
            }
        }
    }
    for id in ib.keys() {
        if !ia.contains_key(id) {
            out.push(format!("{id}: only in second"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_format() {
        assert_eq!(format_residual(0.0), "0");
        assert_eq!(format_residual(1.5e-3), "1.500000e-3");
        assert_eq!(parse_residual("1.500000e-3"), Some(1.5e-3));
    }

    #[test]
    fn roundtrip_and_validate() {
        let checks = vec![
            CheckReport::new("b.two", "second").exact(Some("x".into()), 1.0),
            CheckReport::new("a.one", "first").as_report(false).detail("k", "v"),
        ];
        let r = Report::new(BTreeMap::new(), checks);
        let v = r.to_json();
        validate_report(&v).unwrap();
        let back = Report::from_json(&v).unwrap();
        assert_eq!(back.checks, r.checks);
        assert!(diff_reports(&r, &back, 0.0).is_empty());
    }

    #[test]
    fn validator_rejects_unsorted() {
        let r = Report::new(BTreeMap::new(), vec![CheckReport::new("a", ""), CheckReport::new("b", "")]);
        let mut v = r.to_json();
        v["checks"].as_array_mut().unwrap().reverse();
        assert!(validate_report(&v).is_err());
    }
}
