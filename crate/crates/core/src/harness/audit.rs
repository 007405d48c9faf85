//! Recomputes `summary.csv` from `records.jsonl` and compares the two.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::record::ResultRecord;
use crate::harness::run::{RECORDS_FILE, SUMMARY_FILE};
use crate::harness::summary::{read_summary, summarize_records, SummaryRow};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub records: usize,
    pub rows: usize,
    /// One line per disagreement; empty when the files agree.
    pub mismatches: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(r);
    }
    Ok(out)
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn compare(expected: &SummaryRow, found: &SummaryRow) -> Option<String> {
    let fields = [
        ("median", expected.median, found.median),
        ("q1", expected.q1, found.q1),
        ("q3", expected.q3, found.q3),
        ("iqr", expected.iqr, found.iqr),
        ("mean", expected.mean, found.mean),
    ];
    let mut diffs: Vec<String> = fields
        .iter()
        .filter(|(_, a, b)| !close(*a, *b))
        .map(|(name, a, b)| format!("{name} {b} (recomputed {a})"))
        .collect();
    if expected.count != found.count || expected.disconnected != found.disconnected {
        diffs.push(format!(
            "count/disconnected {}/{} (recomputed {}/{})",
            found.count, found.disconnected, expected.count, expected.disconnected
        ));
    }
    let pred_ok = match (expected.prediction, found.prediction) {
        (Some(a), Some(b)) => close(a, b),
        (None, None) => true,
        _ => false,
    };
    if !pred_ok {
        diffs.push(format!("prediction {:?} (recomputed {:?})", found.prediction, expected.prediction));
    }
    if diffs.is_empty() {
        None
    } else {
        Some(format!(
            "{}/{}/t={}/{}: {}",
            found.kind,
            found.weight_label,
            found.t,
            found.metric,
            diffs.join(", ")
        ))
    }
}

/// Audits the outputs in `dir`.
pub fn audit_outputs(dir: impl AsRef<Path>) -> Result<AuditReport> {
    let dir = dir.as_ref();
    let records = read_records(dir.join(RECORDS_FILE))?;
    let path = dir.join(SUMMARY_FILE);
    let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
    let written = read_summary(file)?;
    let expected = summarize_records(&records);

    let mut mismatches = Vec::new();
    for e in &expected {
        let found = written
            .iter()
            .find(|w| w.kind == e.kind && w.weight_label == e.weight_label && w.t == e.t && w.metric == e.metric);
        match found {
            Some(w) => mismatches.extend(compare(e, w)),
            None => mismatches.push(format!("missing row {}/{}/t={}/{}", e.kind, e.weight_label, e.t, e.metric)),
        }
    }
    if written.len() != expected.len() {
        mismatches.push(format!("{} rows written, {} recomputed", written.len(), expected.len()));
    }
    Ok(AuditReport {
        records: records.len(),
        rows: written.len(),
        mismatches,
    })
}
