//! Seeded Monte Carlo experiments, their statistics and file formats.
//!
//! An [`ExperimentConfig`] names a model, a grid of sizes, a weight law and
//! one of the experiment kinds. [`run_experiment`] turns it into
//! [`ResultRecord`]s; [`write_outputs`] stores them as `records.jsonl` plus
//! the long-format `summary.csv`, and [`audit_outputs`] checks the second
//! against a recomputation from the first.

pub mod audit;
pub mod config;
pub mod io;
pub mod record;
pub mod run;
pub mod stats;
pub mod summary;

pub use audit::{audit_outputs, AuditReport};
pub use config::{replica_seed, ExperimentConfig, ExperimentKind};
pub use io::{load_graph, save_graph};
pub use record::{GreedyRecord, ResultRecord, SCHEMA_VERSION};
pub use run::{run_and_write, run_experiment, write_outputs};
pub use stats::{fit_tail_exponent, summarize, Summary, TailFit};
pub use summary::{summarize_records, SummaryRow};
