//! JSON and CSV report schema.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::Value;

use crate::tor::TorReport;

use super::random::GeneratorParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub seed: Option<u64>,
    pub path: Option<String>,
    pub p: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    #[serde(rename = "D")]
    pub bound: u32,
    pub koszul: Option<Vec<String>>,
    pub gens2: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraInfo {
    pub length: usize,
    pub embdim: usize,
    pub cid_pres: i64,
    pub cid_dev: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulInfo {
    pub n: usize,
    pub h_dims: Vec<usize>,
    pub h_nus: Vec<usize>,
    pub euler: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremInfo {
    pub bound: i64,
    pub slack: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conjecture10Info {
    pub met: bool,
    pub slack: i64,
}

/// `None` means the check does not apply (or was skipped by a size limit).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub dd_zero: Option<bool>,
    pub prop7: Option<bool>,
    pub remark8: Option<bool>,
    pub disc11: Option<bool>,
    pub lift: Option<bool>,
    pub cid: bool,
    pub small_n: Option<bool>,
    pub oracle: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub instance: InstanceInfo,
    pub algebra: AlgebraInfo,
    pub koszul: Option<KoszulInfo>,
    pub theorem: Option<TheoremInfo>,
    pub conjecture10: Option<Conjecture10Info>,
    pub tor: Option<TorReport>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// A failed check (theorem level) or a conjecture miss, with the instance in
/// file form so it can be rerun.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub index: usize,
    pub check: String,
    pub detail: String,
    pub instance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub violations: usize,
    pub findings: usize,
    pub tight: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub params: Option<GeneratorParams>,
    pub summary: Summary,
    pub instances: Vec<InstanceReport>,
    /// Theorem-level failures.
    pub violations: Vec<Finding>,
    /// Conjecture counterexamples.
    pub findings: Vec<Finding>,
    /// Indices of instances with theorem slack 0.
    pub tightness_witnesses: Vec<usize>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() && self.findings.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per instance, with nested keys joined by `.` and lists by `;`.
    /// A section that is null in some rows is written as empty cells.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let rows: Vec<Vec<(String, String)>> = self
            .instances
            .iter()
            .map(|r| {
                let mut out = Vec::new();
                flatten("", &serde_json::to_value(r).expect("report serializes"), &mut out);
                out
            })
            .collect();
        let mut columns: BTreeSet<&str> = rows.iter().flatten().map(|(k, _)| k.as_str()).collect();
        let nested: Vec<&str> = columns.iter().copied().filter(|k| k.contains('.')).collect();
        columns.retain(|k| !nested.iter().any(|n| n.starts_with(&format!("{k}."))));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns)?;
        for row in &rows {
            let lookup: BTreeMap<&str, &str> = row.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            w.write_record(columns.iter().map(|c| lookup.get(c).copied().unwrap_or("")))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_owned(), joined.join(";")));
        }
        other => out.push((prefix.to_owned(), scalar(other))),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_nested() {
        let v = serde_json::json!({"a": {"b": 1, "c": [1, 2]}, "d": null, "e": "x"});
        let mut out = Vec::new();
        flatten("", &v, &mut out);
        let keys: Vec<&str> = out.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, vec!["a.b", "a.c", "d", "e"]);
        assert_eq!(out[1].1, "1;2");
        assert_eq!(out[2].1, "");
    }
}
