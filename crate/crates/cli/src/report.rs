use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    pub fn holds(self, value: f64, limit: f64) -> bool {
        match self {
            Relation::AtMost => value <= limit,
            Relation::AtLeast => value >= limit,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

/// One check. `value` is `None` when the check could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub digest: String,
    pub value: Option<f64>,
    pub relation: Relation,
    pub limit: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub runtime_ms: f64,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: &str, digest: &str, value: f64, relation: Relation, limit: f64) -> Self {
        let value = if value.is_finite() { Some(value) } else { None };
        let pass = value.is_some_and(|v| relation.holds(v, limit));
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            digest: digest.to_string(),
            value,
            relation,
            limit,
            pass,
            note: None,
            runtime_ms: 0.0,
        }
    }

    pub fn at_most(name: impl Into<String>, anchor: &str, digest: &str, value: f64, limit: f64) -> Self {
        Self::new(name, anchor, digest, value, Relation::AtMost, limit)
    }

    pub fn at_least(name: impl Into<String>, anchor: &str, digest: &str, value: f64, limit: f64) -> Self {
        Self::new(name, anchor, digest, value, Relation::AtLeast, limit)
    }

    pub fn failed(name: impl Into<String>, anchor: &str, digest: &str, note: String) -> Self {
        let mut r = Self::new(name, anchor, digest, f64::NAN, Relation::AtMost, 0.0);
        r.note = Some(note);
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Summary of a Fock-space probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockSummary {
    pub name: String,
    pub config: Map<String, Value>,
    pub certified_lower: Map<String, Value>,
    pub analytic_bounds: Map<String, Value>,
    pub ratios: Map<String, Value>,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub records: Vec<Record>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub fock: Vec<FockSummary>,
}

impl Default for SuiteReport {
    fn default() -> Self {
        Self {
            records: Vec::new(),
            pass: true,
            fock: Vec::new(),
        }
    }
}

impl SuiteReport {
    pub fn from_parts(mut records: Vec<Record>, mut fock: Vec<FockSummary>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        fock.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = records.iter().all(|r| r.pass);
        Self { records, pass, fock }
    }

    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| !r.pass).collect()
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every `runtime_ms` removed.
    pub fn to_json_without_runtime(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_runtime(&mut v);
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let failed = self.failures().len();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "# qglab report: {status}\n");
        let _ = writeln!(out, "{} checks, {} failed\n", self.records.len(), failed);
        if !self.records.is_empty() {
            out.push_str("| check | value | bound | status | anchor | runtime ms |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in &self.records {
                let value = match r.value {
                    Some(v) => format!("{v:.3e}"),
                    None => r.note.clone().unwrap_or_else(|| "n/a".into()),
                };
                let status = if r.pass { "ok" } else { "**FAIL**" };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} {:.1e} | {} | {} | {:.1} |",
                    r.name,
                    value,
                    r.relation.symbol(),
                    r.limit,
                    status,
                    r.anchor.replace('|', "\\|"),
                    r.runtime_ms
                );
            }
        }
        for f in &self.fock {
            let _ = writeln!(out, "\n## {}\n", f.name);
            for (title, map) in [
                ("config", &f.config),
                ("certified lower bounds", &f.certified_lower),
                ("analytic bounds", &f.analytic_bounds),
                ("ratios", &f.ratios),
            ] {
                let body: Vec<String> = map.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = writeln!(out, "- {title}: {}", body.join(", "));
            }
        }
        out
    }
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("runtime_ms");
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

/// First 16 hex digits of the SHA-256 of `parts` joined by `|`.
pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            h.update(b"|");
        }
        h.update(p.as_bytes());
    }
    h.finalize().iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// A seed derived from `seed` and a label.
pub fn sub_seed(seed: u64, label: &str) -> u64 {
    let d = Sha256::new()
        .chain_update(seed.to_le_bytes())
        .chain_update(label.as_bytes())
        .finalize();
    u64::from_le_bytes(d[..8].try_into().expect("eight bytes"))
}
