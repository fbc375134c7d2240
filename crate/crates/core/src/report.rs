//! Machine-readable run reports: canonical JSON (deterministic across runs
//! and thread counts) plus CSV flattening for record-shaped payloads.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::atlas::AtlasReport;
use crate::ledger::LedgerEntry;
use crate::search::{ScreenOutcome, SearchOutcome};
use crate::socle::TypeBReport;
use crate::theorem::TheoremOutcome;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Atlas {
        reports: Vec<AtlasReport>,
        type_b: Vec<TypeBReport>,
    },
    Search(Vec<SearchOutcome>),
    Screen(Vec<ScreenOutcome>),
    Ledger(Vec<LedgerEntry>),
    Theorem(Box<TheoremOutcome>),
}

/// A full run report. The canonical section (`version`, `config`,
/// `payload`) is byte-identical across reruns; timing lives outside it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: String,
    pub config: serde_json::Value,
    pub payload: Payload,
    pub timing_seconds: f64,
}

impl RunReport {
    pub fn new(config: serde_json::Value, payload: Payload) -> RunReport {
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            payload,
            timing_seconds: 0.0,
        }
    }

    /// The deterministic section only, as pretty JSON.
    pub fn canonical_json(&self) -> Result<String, ReportError> {
        #[derive(Serialize)]
        struct Canonical<'a> {
            version: &'a str,
            config: &'a serde_json::Value,
            payload: &'a Payload,
        }
        Ok(serde_json::to_string_pretty(&Canonical {
            version: &self.version,
            config: &self.config,
            payload: &self.payload,
        })?)
    }

    pub fn full_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes the report. JSON carries the full structure; CSV flattens to
    /// one row per record. UTF-8, LF line endings.
    pub fn emit(&self, format: ReportFormat, path: &Path) -> Result<(), ReportError> {
        match format {
            ReportFormat::Json => {
                let mut file = std::fs::File::create(path)?;
                file.write_all(self.full_json()?.as_bytes())?;
                file.write_all(b"\n")?;
            }
            ReportFormat::Csv => {
                let mut writer = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_path(path)?;
                self.write_csv(&mut writer)?;
                writer.flush()?;
            }
        }
        Ok(())
    }

    fn write_csv<W: std::io::Write>(&self, w: &mut csv::Writer<W>) -> Result<(), ReportError> {
        match &self.payload {
            Payload::Search(outcomes) => {
                w.write_record(["group", "type", "genus", "class_labels", "verdict"])?;
                for outcome in outcomes {
                    for g in &outcome.groups {
                        for r in &g.records {
                            let labels: Vec<&str> =
                                r.class_labels.iter().map(|l| l.name.as_str()).collect();
                            let verified = r.product_verified
                                && r.generation_verified
                                && r.genus_reverified;
                            w.write_record([
                                r.group.as_str(),
                                &format_type(&r.tuple_type),
                                &r.genus.to_string(),
                                &labels.join(" "),
                                if verified { "verified" } else { "unverified" },
                            ])?;
                        }
                    }
                }
            }
            Payload::Screen(outcomes) => {
                w.write_record(["group", "type", "genus", "class_labels", "verdict"])?;
                for outcome in outcomes {
                    for g in &outcome.groups {
                        for r in &g.passing {
                            let labels: Vec<String> =
                                r.rep_labels.iter().map(|l| l.name.clone()).collect();
                            let genus: Vec<String> =
                                r.passing_genus.iter().map(|g| g.to_string()).collect();
                            w.write_record([
                                r.group.as_str(),
                                &format_type(&r.tuple_type),
                                &genus.join(" "),
                                &labels.join(" "),
                                if r.obstructed { "obstructed" } else { "open" },
                            ])?;
                        }
                    }
                }
            }
            Payload::Ledger(entries) => {
                w.write_record(["id", "computed", "recorded", "verdict", "exact", "note"])?;
                for e in entries {
                    w.write_record([
                        e.id.as_str(),
                        e.computed.as_str(),
                        e.recorded.as_deref().unwrap_or(""),
                        &format!("{:?}", e.verdict),
                        if e.exact { "exact" } else { "enclosure" },
                        e.note.as_str(),
                    ])?;
                }
            }
            Payload::Atlas { reports, type_b } => {
                w.write_record(["label", "check", "pass", "detail"])?;
                for r in reports {
                    for c in &r.checks {
                        w.write_record([
                            r.label.as_str(),
                            c.name.as_str(),
                            if c.pass { "pass" } else { "fail" },
                            c.detail.as_str(),
                        ])?;
                    }
                }
                for r in type_b {
                    for c in &r.checks {
                        w.write_record([
                            r.label.as_str(),
                            c.name.as_str(),
                            if c.pass { "pass" } else { "fail" },
                            c.detail.as_str(),
                        ])?;
                    }
                }
            }
            Payload::Theorem(outcome) => {
                w.write_record(["group", "type", "genus", "ramification_types", "verdict"])?;
                for hit in &outcome.hits {
                    w.write_record([
                        hit.group.as_str(),
                        &format_type(&hit.tuple_type),
                        &hit.genus.to_string(),
                        &hit.ramification_types.to_string(),
                        "hit",
                    ])?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub fn format_type(t: &[u64]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_csv_has_exact_fraction_strings() {
        let entries = vec![crate::ledger::eval_fixed_chain("prop35-generic-237").unwrap()];
        let report = RunReport::new(
            serde_json::json!({"case": "prop35-generic-237"}),
            Payload::Ledger(entries),
        );
        let dir = std::env::temp_dir().join("mforge-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ledger.csv");
        report.emit(ReportFormat::Csv, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("52931/52955"), "{text}");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_round_trips() {
        let entries = crate::ledger::run_case("prop33-total-237").unwrap();
        let report = RunReport::new(serde_json::json!({}), Payload::Ledger(entries));
        let json = report.full_json().unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["version"], env!("CARGO_PKG_VERSION"));
        assert!(parsed["payload"]["kind"] == "ledger");
    }

    #[test]
    fn canonical_json_is_stable() {
        let entries = crate::ledger::run_case("or-table-23").unwrap();
        let r1 = RunReport::new(serde_json::json!({"x": 1}), Payload::Ledger(entries.clone()));
        let mut r2 = RunReport::new(serde_json::json!({"x": 1}), Payload::Ledger(entries));
        r2.timing_seconds = 99.0;
        assert_eq!(r1.canonical_json().unwrap(), r2.canonical_json().unwrap());
        assert_ne!(r1.full_json().unwrap(), r2.full_json().unwrap());
    }
}
