//! The experiment runner.
//!
//! Each `(t, replica)` gets its own graph, drawn from a seed derived from
//! the master seed. Pairs are drawn sequentially from a dedicated stream,
//! then measured in parallel; results are collected in pair order, so the
//! output does not depend on the number of workers.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptotics::{k_star, layer_plan, main_term_partial_sums, power_law_exponent, q_t};
use crate::error::{Error, Result};
use crate::graph::{edge_weights, generate, GrowthGraph, ModelParams, Vertex};
use crate::harness::config::{replica_seed, stream_seed, ExperimentConfig, ExperimentKind};
use crate::harness::record::{GreedyRecord, ResultRecord};
use crate::harness::stats::fit_tail_exponent;
use crate::harness::summary::{summarize_records, write_summary};
use crate::metrics::{sample_typical_pair, Explorer};
use crate::pathfinder::{audit_trace, greedy_path_in, inner_core, layers};
use crate::weights::WeightDistribution;

/// Environment variable overriding the number of worker threads.
pub const WORKERS_ENV: &str = "PAFPP_WORKERS";

pub const RECORDS_FILE: &str = "records.jsonl";
pub const SUMMARY_FILE: &str = "summary.csv";

/// Worker count: `PAFPP_WORKERS` if set, otherwise one per core.
pub fn worker_count() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::config(format!("{WORKERS_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Expected number of edges of a graph of size `t`. For variable outdegree
/// the mean outdegree `c` solves `c = f(0) + slope * c` with the initial
/// slope of the concave rule, which bounds the true mean from above.
fn expected_edges(model: &ModelParams, t: Vertex) -> f64 {
    match model {
        ModelParams::Fpa { m, .. } => *m as f64 * (t as f64 - 1.0),
        _ => {
            let rule = model.rule().expect("variable-outdegree model");
            let slope = rule.eval(1) - rule.eval(0);
            rule.eval(0) / (1.0 - slope) * t as f64
        }
    }
}

/// Peak memory estimate in bytes for the largest graph of `config` with
/// `workers` explorers.
pub fn estimate_memory(config: &ExperimentConfig, workers: usize) -> u64 {
    let t = config.sizes.iter().copied().max().unwrap_or(0);
    let edges = expected_edges(&config.model, t);
    // Edge (12) + weight (8) + two incidence entries (16) + a spare weight
    // vector while switching laws (8).
    let per_edge = 44.0;
    // Offsets, generator buckets, layer levels, plus one explorer per worker.
    let per_vertex = 4.0 + 16.0 + 8.0 + 56.0 * workers as f64;
    let records = config.pairs as f64 * config.replicas as f64 * config.sizes.len() as f64 * 2.0 * 512.0;
    (edges * per_edge + (t as f64 + 1.0) * per_vertex + records) as u64
}

fn check_memory(config: &ExperimentConfig, workers: usize) -> Result<()> {
    let need = estimate_memory(config, workers);
    if need > config.memory_limit_bytes {
        let mib = |b: u64| b as f64 / (1u64 << 20) as f64;
        return Err(Error::Resource(format!(
            "experiment needs about {:.0} MiB at t = {} (limit {:.0} MiB); lower the largest size or raise memory_limit_bytes",
            mib(need),
            config.sizes.iter().max().unwrap(),
            mib(config.memory_limit_bytes)
        )));
    }
    Ok(())
}

/// Runs every `(t, replica)` of `config` and returns the records ordered by
/// `(t, replica, weight law, pair)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    config.validate()?;
    let workers = worker_count()?;
    check_memory(config, workers)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start {workers} workers: {e}")))?;
    let digest = config.digest();
    let tau = power_law_exponent(&config.model).ok().filter(|t| *t > 2.0 && *t < 3.0);
    let mut out = Vec::new();
    for &t in &config.sizes {
        for replica in 0..config.replicas {
            let ctx = Replica {
                config,
                t,
                replica,
                seed: replica_seed(config.seed, t, replica),
                digest: &digest,
                tau,
            };
            info!("{} t={t} replica={replica}", config.kind);
            pool.install(|| ctx.run(&mut out))?;
        }
    }
    Ok(out)
}

/// Writes `records.jsonl` and `summary.csv` into `dir`.
pub fn write_outputs(records: &[ResultRecord], dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(RECORDS_FILE);
    let mut w = BufWriter::new(File::create(&path).map_err(|e| Error::io(&path, e))?);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n").map_err(|e| Error::io(&path, e))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    let path = dir.join(SUMMARY_FILE);
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_summary(&summarize_records(records), BufWriter::new(file))
}

/// Runs `config` and writes its outputs to `config.output` when set.
pub fn run_and_write(config: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    let records = run_experiment(config)?;
    if let Some(dir) = &config.output {
        write_outputs(&records, dir)?;
    }
    Ok(records)
}

struct Replica<'a> {
    config: &'a ExperimentConfig,
    t: Vertex,
    replica: u32,
    seed: u64,
    digest: &'a str,
    tau: Option<f64>,
}

impl Replica<'_> {
    fn record(&self, label: &str, pair: u32) -> ResultRecord {
        ResultRecord::new(self.config.kind, label, self.t, self.replica, pair, self.seed, self.digest)
    }

    fn rng(&self, purpose: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(stream_seed(self.seed, purpose))
    }

    fn require_tau(&self) -> Result<f64> {
        self.tau.ok_or_else(|| {
            Error::config(format!("{} needs a model with tau in (2, 3)", self.config.kind))
        })
    }

    fn run(&self, out: &mut Vec<ResultRecord>) -> Result<()> {
        let c = self.config;
        let mut graph = generate(&c.model, self.t, stream_seed(self.seed, "graph"))?;
        match c.kind {
            ExperimentKind::DistanceScaling | ExperimentKind::Hopcount => {
                graph.assign_weights(&c.weights, stream_seed(self.seed, "weights"));
                let pairs = self.typical_pairs();
                self.distances(&graph, &c.weights, &pairs, out)
            }
            ExperimentKind::ExplosionVsConservative => {
                let pairs = self.typical_pairs();
                let contrast = c.contrast_weights.as_ref().expect("validated");
                for (dist, purpose) in [(&c.weights, "weights"), (contrast, "contrast")] {
                    graph.set_weights(edge_weights(graph.edge_count(), dist, stream_seed(self.seed, purpose)))?;
                    self.distances(&graph, dist, &pairs, out)?;
                }
                Ok(())
            }
            ExperimentKind::BetaKCentering => {
                graph.assign_weights(&c.weights, stream_seed(self.seed, "weights"));
                self.beta(&graph, out)
            }
            ExperimentKind::DegreeTail => self.degree_tail(&graph, out),
            ExperimentKind::GreedyValidation => {
                graph.assign_weights(&c.weights, stream_seed(self.seed, "weights"));
                self.greedy(&graph, out)
            }
            ExperimentKind::InnerCoreDiameter => {
                graph.assign_weights(&c.weights, stream_seed(self.seed, "weights"));
                self.inner_core(&graph, out)
            }
        }
    }

    fn typical_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut rng = self.rng("pairs");
        (0..self.config.pairs).map(|_| sample_typical_pair(self.t, &mut rng)).collect()
    }

    fn uniform_vertices(&self, purpose: &str) -> Vec<Vertex> {
        let mut rng = self.rng(purpose);
        (0..self.config.pairs).map(|_| rng.random_range(1..=self.t)).collect()
    }

    /// `(K*_t, Q_t)` under `dist`, when the model is scale free.
    fn predictions(&self, dist: &WeightDistribution) -> Result<Option<(u32, f64)>> {
        match self.tau {
            Some(tau) => Ok(Some((k_star(self.t as u64, tau)?, q_t(self.t as u64, tau, dist)?))),
            None => Ok(None),
        }
    }

    fn distances(
        &self,
        graph: &GrowthGraph,
        dist: &WeightDistribution,
        pairs: &[(Vertex, Vertex)],
        out: &mut Vec<ResultRecord>,
    ) -> Result<()> {
        let label = dist.label();
        let pred = self.predictions(dist)?;
        let measured = measure_pairs(graph, pairs)?;
        for (i, (&(u, v), (d_g, d_l, d_h))) in pairs.iter().zip(measured).enumerate() {
            let mut r = self.record(&label, i as u32);
            r.u = Some(u);
            r.v = Some(v);
            r.d_g = d_g;
            r.d_l = d_l;
            r.d_h = d_h;
            r.disconnected = d_g.is_none();
            if let Some((k, q)) = pred {
                r.tau = self.tau;
                r.k_star = Some(k);
                r.q_t = Some(q);
            }
            out.push(r);
        }
        Ok(())
    }

    fn beta(&self, graph: &GrowthGraph, out: &mut Vec<ResultRecord>) -> Result<()> {
        let c = self.config;
        let label = c.weights.label();
        let roots = self.uniform_vertices("roots");
        let main = match self.tau {
            Some(tau) => Some(main_term_partial_sums(c.k_max, tau, &c.weights)?[1..].to_vec()),
            None => None,
        };
        let profiles: Vec<Vec<f64>> = roots
            .par_iter()
            .map_init(|| Explorer::new(graph), |ex, &q| ex.beta_profile(q, c.k_max))
            .collect::<Result<_>>()?;
        for (i, (&q, profile)) in roots.iter().zip(profiles).enumerate() {
            let mut r = self.record(&label, i as u32);
            r.u = Some(q);
            r.tau = self.tau;
            r.beta = Some(profile[1..].iter().map(|b| b.is_finite().then_some(*b)).collect());
            r.main_term = main.clone();
            out.push(r);
        }
        Ok(())
    }

    fn degree_tail(&self, graph: &GrowthGraph, out: &mut Vec<ResultRecord>) -> Result<()> {
        let degrees: Vec<f64> = (1..=graph.t()).map(|v| graph.degree(v) as f64).collect();
        let fit = fit_tail_exponent(&degrees, self.config.top_fraction, stream_seed(self.seed, "bootstrap"))?;
        let mut r = self.record("none", 0);
        r.tau = power_law_exponent(&self.config.model).ok();
        r.tau_hat = Some(fit.tau_hat);
        r.tau_se = Some(fit.std_err);
        out.push(r);
        Ok(())
    }

    fn greedy(&self, graph: &GrowthGraph, out: &mut Vec<ResultRecord>) -> Result<()> {
        let c = self.config;
        let tau = self.require_tau()?;
        let plan = layer_plan(c.s0, self.t as u64, c.alpha, tau, c.layer_variant)?;
        let layers = layers(graph, &plan, c.alpha)?;
        let origins = self.uniform_vertices("origins");
        let label = c.weights.label();
        let trials: Vec<Option<(Vertex, u32, GreedyRecord)>> = origins
            .par_iter()
            .map_init(
                || Explorer::new(graph),
                |ex, &u| -> Result<_> {
                    let Some((start, hops)) = ex.bfs_find(u, |w| layers.contains(0, w))? else {
                        return Ok(None);
                    };
                    let trace = greedy_path_in(graph, start, &layers)?;
                    let audit = audit_trace(graph, &trace, &layers);
                    let reach = ex.weighted_distance(start, trace.endpoint())?;
                    let g = GreedyRecord {
                        layers: layers.count() as u32,
                        succeeded: trace.succeeded(),
                        failed_at_step: match trace.outcome {
                            crate::pathfinder::GreedyOutcome::FailedAtStep(k) => Some(k),
                            _ => None,
                        },
                        steps: trace.steps.len() as u32,
                        endpoint: trace.endpoint(),
                        total_weight: trace.total_weight,
                        d_l_endpoint: reach.weight,
                        audit_passed: audit.passed(),
                        reused_connectors: trace.reused_connectors.len() as u32,
                    };
                    Ok(Some((start, hops, g)))
                },
            )
            .collect::<Result<_>>()?;
        for (i, (&u, trial)) in origins.iter().zip(trials).enumerate() {
            let mut r = self.record(&label, i as u32);
            r.u = Some(u);
            r.tau = Some(tau);
            match trial {
                Some((start, hops, g)) => {
                    r.v = Some(start);
                    r.d_g = Some(hops);
                    r.greedy = Some(g);
                }
                None => r.disconnected = true,
            }
            out.push(r);
        }
        Ok(())
    }

    fn inner_core(&self, graph: &GrowthGraph, out: &mut Vec<ResultRecord>) -> Result<()> {
        let c = self.config;
        let tau = self.require_tau()?;
        let core = inner_core(graph, c.alpha, tau)?;
        let label = c.weights.label();
        let pairs: Vec<(Vertex, Vertex)> = if core.is_empty() {
            Vec::new()
        } else {
            let mut rng = self.rng("core_pairs");
            (0..c.pairs)
                .map(|_| {
                    let a = core[rng.random_range(0..core.len())].0;
                    let b = core[rng.random_range(0..core.len())].0;
                    (a, b)
                })
                .collect()
        };
        let measured = measure_pairs(graph, &pairs)?;
        for i in 0..c.pairs as usize {
            let mut r = self.record(&label, i as u32);
            r.tau = Some(tau);
            r.inner_core_size = Some(core.len() as u32);
            if let (Some(&(u, v)), Some(&(d_g, d_l, d_h))) = (pairs.get(i), measured.get(i)) {
                r.u = Some(u);
                r.v = Some(v);
                r.d_g = d_g;
                r.d_l = d_l;
                r.d_h = d_h;
                r.disconnected = d_g.is_none();
            }
            out.push(r);
        }
        Ok(())
    }
}

type Distances = (Option<u32>, Option<f64>, Option<u32>);

/// `(d_G, d_L, d_H)` for every pair, in order.
fn measure_pairs(graph: &GrowthGraph, pairs: &[(Vertex, Vertex)]) -> Result<Vec<Distances>> {
    pairs
        .par_iter()
        .map_init(
            || Explorer::new(graph),
            |ex, &(u, v)| -> Result<Distances> {
                let d_g = ex.graph_distance(u, v)?;
                if d_g.is_none() {
                    return Ok((None, None, None));
                }
                let (d_l, d_h) = ex.weighted_key(u, v)?.expect("connected pair");
                Ok((d_g, Some(d_l), Some(d_h)))
            },
        )
        .collect()
}
