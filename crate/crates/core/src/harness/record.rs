//! One line of `records.jsonl`.

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;
use crate::harness::config::ExperimentKind;

/// Version of the JSONL and CSV layouts documented in `docs/schema.md`.
pub const SCHEMA_VERSION: u32 = 1;

/// One measurement with its provenance. Distances are `None` for
/// disconnected pairs and for kinds that do not measure them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub kind: ExperimentKind,
    /// Label of the weight law the distances were measured under.
    pub weight_label: String,
    pub t: Vertex,
    pub replica: u32,
    pub pair: u32,
    /// Replica seed the graph and its weights were drawn from.
    pub seed: u64,
    pub config_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_l: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_h: Option<u32>,
    pub disconnected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_star: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_se: Option<f64>,
    /// `beta_1(u), ..., beta_{k_max}(u)`; `None` where the boundary is empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Option<f64>>>,
    /// Main-term sums for `k = 1..=k_max`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_term: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub greedy: Option<GreedyRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_core_size: Option<u32>,
}

/// Greedy-path outcome for one trial. `u` of the enclosing record is the
/// uniform starting point, `v` the layer-0 start found from it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyRecord {
    pub layers: u32,
    pub succeeded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_at_step: Option<u32>,
    pub steps: u32,
    pub endpoint: Vertex,
    pub total_weight: f64,
    /// `d_L(start, endpoint)`, never larger than `total_weight`.
    pub d_l_endpoint: f64,
    pub audit_passed: bool,
    pub reused_connectors: u32,
}

impl ResultRecord {
    pub(crate) fn new(kind: ExperimentKind, weight_label: &str, t: Vertex, replica: u32, pair: u32, seed: u64, digest: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind,
            weight_label: weight_label.to_string(),
            t,
            replica,
            pair,
            seed,
            config_digest: digest.to_string(),
            u: None,
            v: None,
            d_g: None,
            d_l: None,
            d_h: None,
            disconnected: false,
            tau: None,
            k_star: None,
            q_t: None,
            tau_hat: None,
            tau_se: None,
            beta: None,
            main_term: None,
            greedy: None,
            inner_core_size: None,
        }
    }
}
