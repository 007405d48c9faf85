//! Experiment configuration, seed derivation and the config digest.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::asymptotics::LayerVariant;
use crate::error::{Error, Result};
use crate::graph::{ModelParams, Vertex};
use crate::weights::WeightDistribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `d_G`, `d_L`, `d_H` between typical pairs, against `2 Q_t` and `2 K*_t`.
    DistanceScaling,
    /// Same measurements as `DistanceScaling`; summarised against `2 K*_t`.
    Hopcount,
    /// Typical distances under `weights` and `contrast_weights` on the same
    /// graphs.
    ExplosionVsConservative,
    /// `beta_k(q)` for `k = 1..=k_max` at uniform roots, against the main term.
    BetaKCentering,
    /// Hill fit of the degree sequence, one record per graph.
    DegreeTail,
    /// Greedy layer paths from vertices near uniform starting points.
    GreedyValidation,
    /// Distances between uniform pairs of inner-core vertices.
    InnerCoreDiameter,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DistanceScaling => "distance_scaling",
            Self::Hopcount => "hopcount",
            Self::ExplosionVsConservative => "explosion_vs_conservative",
            Self::BetaKCentering => "beta_k_centering",
            Self::DegreeTail => "degree_tail",
            Self::GreedyValidation => "greedy_validation",
            Self::InnerCoreDiameter => "inner_core_diameter",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn default_alpha() -> f64 {
    0.5
}
fn default_replicas() -> u32 {
    1
}
fn default_k_max() -> u32 {
    6
}
fn default_s0() -> f64 {
    50.0
}
fn default_top_fraction() -> f64 {
    0.05
}
fn default_variant() -> LayerVariant {
    LayerVariant::Tight
}
fn default_memory_limit() -> u64 {
    4 << 30
}

/// One experiment, as read from its JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub model: ModelParams,
    /// Graph sizes `t`, each at least 3.
    pub sizes: Vec<Vertex>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub weights: WeightDistribution,
    /// Second weight law, required by `explosion_vs_conservative`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contrast_weights: Option<WeightDistribution>,
    /// Pairs (or roots, or trials) per graph.
    pub pairs: u32,
    #[serde(default = "default_replicas")]
    pub replicas: u32,
    pub seed: u64,
    /// Output directory for `records.jsonl` and `summary.csv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Largest `k` for `beta_k`.
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    /// Degree threshold of the first greedy layer.
    #[serde(default = "default_s0")]
    pub s0: f64,
    #[serde(default = "default_variant")]
    pub layer_variant: LayerVariant,
    #[serde(default = "default_top_fraction")]
    pub top_fraction: f64,
    #[serde(default = "default_memory_limit")]
    pub memory_limit_bytes: u64,
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(
        kind: ExperimentKind,
        model: ModelParams,
        sizes: Vec<Vertex>,
        weights: WeightDistribution,
        pairs: u32,
        seed: u64,
    ) -> Self {
        Self {
            kind,
            model,
            sizes,
            alpha: default_alpha(),
            weights,
            contrast_weights: None,
            pairs,
            replicas: default_replicas(),
            seed,
            output: None,
            k_max: default_k_max(),
            s0: default_s0(),
            layer_variant: default_variant(),
            top_fraction: default_top_fraction(),
            memory_limit_bytes: default_memory_limit(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::Config(format!("{}: {j}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.weights.validate()?;
        if let Some(c) = &self.contrast_weights {
            c.validate()?;
        }
        if self.sizes.is_empty() {
            return Err(Error::config("sizes is empty"));
        }
        if let Some(t) = self.sizes.iter().find(|&&t| t < 3) {
            return Err(Error::config(format!("size {t} is below 3")));
        }
        if self.pairs == 0 {
            return Err(Error::config("pairs must be at least 1"));
        }
        if self.replicas == 0 {
            return Err(Error::config("replicas must be at least 1"));
        }
        if !(self.alpha >= 0.5 && self.alpha < 1.0) {
            return Err(Error::config(format!("alpha {} outside [1/2, 1)", self.alpha)));
        }
        if !(self.top_fraction > 0.0 && self.top_fraction < 1.0) {
            return Err(Error::config(format!("top_fraction {} outside (0, 1)", self.top_fraction)));
        }
        if self.k_max == 0 {
            return Err(Error::config("k_max must be at least 1"));
        }
        match self.kind {
            ExperimentKind::ExplosionVsConservative if self.contrast_weights.is_none() => {
                return Err(Error::config("explosion_vs_conservative needs contrast_weights"));
            }
            ExperimentKind::GreedyValidation => {
                if !(self.s0 > 1.0 && self.s0.is_finite()) {
                    return Err(Error::config(format!("s0 must exceed 1, got {}", self.s0)));
                }
                if self.sizes.iter().any(|&t| ((self.alpha * t as f64).floor() as u64) < 3) {
                    return Err(Error::config("greedy_validation needs floor(alpha t) >= 3 at every size"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Hex SHA-256 of the config's canonical JSON (field order fixed by the
    /// struct, output path excluded so relocating a run keeps its digest).
    pub fn digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = None;
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        hex(&Sha256::digest(&bytes))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Seed of replica `replica` at size `t`.
pub fn replica_seed(master: u64, t: Vertex, replica: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(t.to_le_bytes());
    h.update(replica.to_le_bytes());
    first_u64(&h.finalize())
}

/// Independent stream seed for one purpose (`"graph"`, `"weights"`, ...)
/// within a replica.
pub fn stream_seed(replica_seed: u64, purpose: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(replica_seed.to_le_bytes());
    h.update(purpose.as_bytes());
    first_u64(&h.finalize())
}

fn first_u64(digest: &[u8]) -> u64 {
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}
