//! First passage percolation on preferential attachment graphs.
//!
//! The crate grows fixed- and variable-outdegree preferential attachment
//! graphs, puts i.i.d. passage times on their edges and measures graph,
//! weighted and hop distances. Alongside the simulators it computes the
//! asymptotic predictions these distances are compared against: the
//! explosive/conservative classification of a weight law, the hopcount
//! and weighted-distance main terms, and the layer recursion behind the
//! greedy upper-bound path. [`harness`] ties everything into seeded,
//! reproducible Monte Carlo experiments.
//!
//! ```
//! use pafpp::{generate, weighted_distance, ModelParams, WeightDistribution};
//!
//! let params = ModelParams::fpa(2, -1.0).unwrap();
//! let dist = WeightDistribution::exponential(1.0).unwrap();
//! let g = generate(&params, 1_000, 7).unwrap().with_weights(&dist, 8);
//! let path = weighted_distance(&g, 1, 1_000).unwrap();
//! assert!(path.weight.is_finite());
//! ```

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod pathfinder;
pub mod weights;

pub use asymptotics::{
    inner_core_threshold, k_star, layer_plan, main_term_sum, power_law_exponent, predict, q_t, LayerPlan,
    LayerVariant, PredictionBundle,
};
pub use error::{Error, Result};
pub use graph::{generate, AttachmentRule, Edge, GrowthGraph, ModelParams, Vertex};
pub use metrics::{beta_k, graph_distance, sigma_n, weighted_distance, Explorer, Metric, PathResult};
pub use pathfinder::{alpha_connectors, greedy_path, inner_core, layers, GreedyOutcome, GreedyPathTrace};
pub use weights::{explosion_characteristic, tightness_condition, ClassificationResult, WeightClass, WeightDistribution};
