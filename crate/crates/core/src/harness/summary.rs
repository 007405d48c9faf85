//! Long-format summary table: one row per `(kind, weight law, t, metric)`.

use std::collections::HashMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::harness::config::ExperimentKind;
use crate::harness::record::{ResultRecord, SCHEMA_VERSION};
use crate::harness::stats::summarize;

/// One line of `summary.csv`. Statistics cover the finite values only;
/// distance rows therefore condition on connected pairs, and
/// `disconnected` counts the pairs left out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub schema_version: u32,
    pub kind: ExperimentKind,
    pub weight_label: String,
    pub t: u32,
    pub metric: String,
    pub count: usize,
    pub disconnected: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub mean: f64,
    /// Predicted value for the metric at this `t`, where one exists:
    /// `2 Q_t` for `d_l`, `2 K*_t` for `d_g` and `d_h`, the main term for
    /// `beta_k`, `tau` for `tau_hat`.
    pub prediction: Option<f64>,
}

/// `(metric, value, prediction)` triples contributed by one record.
fn observations(r: &ResultRecord) -> Vec<(String, f64, Option<f64>)> {
    let mut out = Vec::new();
    let two_k = r.k_star.map(|k| 2.0 * k as f64);
    if let Some(d) = r.d_g {
        out.push(("d_g".to_string(), d as f64, two_k));
    }
    if let Some(d) = r.d_l {
        out.push(("d_l".to_string(), d, r.q_t.map(|q| 2.0 * q)));
    }
    if let Some(d) = r.d_h {
        out.push(("d_h".to_string(), d as f64, two_k));
    }
    if let Some(beta) = &r.beta {
        for (i, b) in beta.iter().enumerate() {
            let main = r.main_term.as_ref().map(|m| m[i]);
            let b = b.unwrap_or(f64::INFINITY);
            out.push((format!("beta_{}", i + 1), b, main));
            if let Some(main) = main {
                out.push((format!("beta_{}_centered", i + 1), b - main, None));
            }
        }
    }
    if let Some(tau_hat) = r.tau_hat {
        out.push(("tau_hat".to_string(), tau_hat, r.tau));
    }
    if r.kind == ExperimentKind::GreedyValidation {
        let ok = r.greedy.as_ref().is_some_and(|g| g.succeeded);
        out.push(("greedy_success".to_string(), if ok { 1.0 } else { 0.0 }, None));
        if let Some(g) = &r.greedy {
            out.push(("greedy_total_weight".to_string(), g.total_weight, None));
            out.push(("greedy_d_l_endpoint".to_string(), g.d_l_endpoint, None));
            out.push(("greedy_audit_passed".to_string(), if g.audit_passed { 1.0 } else { 0.0 }, None));
        }
    }
    if let Some(n) = r.inner_core_size {
        out.push(("inner_core_size".to_string(), n as f64, None));
    }
    out
}

/// Groups `records` and summarises every metric. Rows follow the order in
/// which each `(kind, weight law, t, metric)` first appears.
pub fn summarize_records(records: &[ResultRecord]) -> Vec<SummaryRow> {
    type Key = (ExperimentKind, String, u32, String);
    let mut order: Vec<Key> = Vec::new();
    let mut groups: HashMap<Key, (Vec<f64>, Option<f64>)> = HashMap::new();
    let mut disconnected: HashMap<(ExperimentKind, String, u32), usize> = HashMap::new();
    for r in records {
        if r.disconnected {
            *disconnected.entry((r.kind, r.weight_label.clone(), r.t)).or_default() += 1;
        }
        for (metric, value, prediction) in observations(r) {
            let key = (r.kind, r.weight_label.clone(), r.t, metric);
            let entry = groups.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                (Vec::new(), prediction)
            });
            entry.0.push(value);
        }
    }
    order
        .into_iter()
        .filter_map(|key| {
            let (values, prediction) = &groups[&key];
            let s = summarize(values)?;
            let (kind, weight_label, t, metric) = key.clone();
            Some(SummaryRow {
                schema_version: SCHEMA_VERSION,
                disconnected: disconnected.get(&(kind, weight_label.clone(), t)).copied().unwrap_or(0),
                kind,
                weight_label,
                t,
                metric,
                count: s.count,
                median: s.median,
                q1: s.q1,
                q3: s.q3,
                iqr: s.iqr(),
                mean: s.mean,
                prediction: *prediction,
            })
        })
        .collect()
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| crate::error::Error::io("summary.csv", e))?;
    Ok(())
}

pub fn read_summary<R: Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    crate::error::Error::Parse {
        path: "summary.csv".into(),
        line,
        msg: e.to_string(),
    }
}

/// Looks up a row.
pub fn find_row<'a>(rows: &'a [SummaryRow], weight_label: &str, t: u32, metric: &str) -> Option<&'a SummaryRow> {
    rows.iter()
        .find(|r| r.weight_label == weight_label && r.t == t && r.metric == metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(t: u32, d: Option<u32>) -> ResultRecord {
        let mut r = ResultRecord::new(ExperimentKind::DistanceScaling, "uniform(0,1)", t, 0, 0, 1, "x");
        r.d_g = d;
        r.d_h = d;
        r.d_l = d.map(f64::from);
        r.disconnected = d.is_none();
        r.k_star = Some(3);
        r
    }

    #[test]
    fn rows_and_round_trip() {
        let records = vec![record(10, Some(1)), record(10, None), record(10, Some(3)), record(20, Some(2))];
        let rows = summarize_records(&records);
        assert_eq!(rows.len(), 6);
        let dg = find_row(&rows, "uniform(0,1)", 10, "d_g").unwrap();
        assert_eq!((dg.count, dg.disconnected, dg.median), (2, 1, 2.0));
        assert_eq!(dg.prediction, Some(6.0));
        assert_eq!(find_row(&rows, "uniform(0,1)", 10, "d_l").unwrap().prediction, None);

        let mut buf = Vec::new();
        write_summary(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("schema_version,kind,weight_label,t,metric,count,disconnected,"));
        assert!(text.contains("\"uniform(0,1)\""));
        assert_eq!(read_summary(buf.as_slice()).unwrap(), rows);
    }
}
