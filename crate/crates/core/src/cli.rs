//! Command-line front end, shared by the `pafpp` binary and its tests.
//!
//! Results go to stdout as JSON (one document, or one line per item for
//! lists). Errors go to stderr, as plain text or, with `--error-json`, as
//! `{"error": kind, "message": ..., "exit_code": n}`. Exit status is 0 on
//! success, 2 for invalid input and 3 when an experiment is refused for
//! its memory footprint.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::asymptotics::{layer_plan, power_law_exponent, predict, LayerVariant};
use crate::error::{Error, Result};
use crate::graph::{generate, AttachmentRule, ModelParams, Vertex};
use crate::harness::{audit_outputs, load_graph, run_experiment, save_graph, write_outputs, ExperimentConfig};
use crate::harness::io::check_variant;
use crate::metrics::{sample_typical_pair, Explorer};
use crate::pathfinder::{audit_trace, greedy_path_in, layers};
use crate::weights::{explosion_characteristic, WeightDistribution, DEFAULT_K_MAX, DEFAULT_TOL};

#[derive(Parser, Debug)]
#[command(name = "pafpp", version, about = "First passage percolation on preferential attachment graphs")]
pub struct Cli {
    /// Report errors as a JSON object on stderr.
    #[arg(long, global = true)]
    pub error_json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grow a graph and write it as an edge list.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        t: Vertex,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also attach i.i.d. weights from this distribution descriptor.
        #[arg(long)]
        dist: Option<String>,
        #[arg(long, default_value_t = 1)]
        weight_seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Attach (or replace) i.i.d. edge weights on a saved graph.
    Weights {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dist: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Explosive/conservative classification of a weight law.
    Classify {
        #[arg(long)]
        dist: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Asymptotic predictions for a model, size and weight law.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value = r#"{"family":"exponential","rate":1}"#)]
        dist: String,
        /// Include the layer plan starting from this degree threshold.
        #[arg(long)]
        s0: Option<f64>,
        #[command(flatten)]
        variant: VariantArgs,
    },
    /// Graph, weighted and hop distances between pairs of a saved graph.
    Distances {
        #[arg(long)]
        graph: PathBuf,
        /// Pairs as `u:v`, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        pairs: Vec<String>,
        /// Sample this many typical pairs instead.
        #[arg(long)]
        random: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Greedy layer path from a start vertex of a saved graph.
    Greedy {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long)]
        s0: f64,
        /// Start here, or at the nearest layer-0 vertex to it.
        #[arg(long)]
        from: Vertex,
        #[command(flatten)]
        variant: VariantArgs,
    },
    /// Run an experiment from a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config's `output`).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute an experiment's summary from its records and compare.
    Audit {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Fpa,
    Vpa,
    Gvpa,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Fpa)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.75)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta0: f64,
    /// Attachment rule JSON for gvpa, e.g. `{"values":[0.5,1],"tail_slope":0.6}`.
    #[arg(long)]
    pub rule: Option<String>,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams> {
        match self.model {
            ModelKind::Fpa => ModelParams::fpa(self.m, self.delta),
            ModelKind::Vpa => ModelParams::vpa(self.gamma, self.beta0),
            ModelKind::Gvpa => {
                let text = self.rule.as_deref().ok_or_else(|| Error::config("gvpa needs --rule"))?;
                let rule: AttachmentRule = serde_json::from_str(text)?;
                ModelParams::gvpa(rule)
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct VariantArgs {
    /// Use a constant epsilon in the layer recursion instead of (k+2)^-2.
    #[arg(long)]
    pub eps_g: Option<f64>,
}

impl VariantArgs {
    fn variant(&self) -> LayerVariant {
        match self.eps_g {
            Some(eps_g) => LayerVariant::General { eps_g },
            None => LayerVariant::Tight,
        }
    }
}

fn parse_dist(text: &str) -> Result<WeightDistribution> {
    let dist: WeightDistribution =
        serde_json::from_str(text).map_err(|e| Error::config(format!("bad distribution descriptor: {e}")))?;
    dist.validate()?;
    Ok(dist)
}

fn parse_pair(text: &str) -> Result<(Vertex, Vertex)> {
    let bad = || Error::config(format!("pair '{text}' is not u:v"));
    let (u, v) = text.split_once(':').ok_or_else(bad)?;
    Ok((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

fn print_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out).map_err(|e| Error::io("<stdout>", e))
}

fn execute(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Generate {
            model,
            t,
            seed,
            dist,
            weight_seed,
            out: path,
        } => {
            let params = model.params()?;
            let mut g = generate(&params, t, seed)?;
            if let Some(d) = dist {
                g.assign_weights(&parse_dist(&d)?, weight_seed);
            }
            save_graph(&g, &path)?;
            print_json(out, &json!({"path": path, "t": g.t(), "edges": g.edge_count(), "variant": g.variant()}))
        }
        Command::Weights {
            graph,
            dist,
            seed,
            out: path,
        } => {
            let dist = parse_dist(&dist)?;
            let mut g = load_graph(&graph)?;
            g.assign_weights(&dist, seed);
            save_graph(&g, &path)?;
            print_json(out, &json!({"path": path, "edges": g.edge_count(), "weights": dist.label()}))
        }
        Command::Classify { dist, k_max, tol } => {
            let result = explosion_characteristic(&parse_dist(&dist)?, k_max, tol)?;
            print_json(out, &result)
        }
        Command::Predict {
            model,
            t,
            alpha,
            dist,
            s0,
            variant,
        } => {
            let bundle = predict(&model.params()?, t, alpha, &parse_dist(&dist)?, s0, variant.variant())?;
            print_json(out, &bundle)
        }
        Command::Distances {
            graph,
            pairs,
            random,
            seed,
        } => {
            let g = load_graph(&graph)?;
            let pairs: Vec<(Vertex, Vertex)> = match random {
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..n).map(|_| sample_typical_pair(g.t(), &mut rng)).collect()
                }
                None if pairs.is_empty() => return Err(Error::config("give --pairs or --random")),
                None => pairs.iter().map(|p| parse_pair(p)).collect::<Result<_>>()?,
            };
            let mut ex = Explorer::new(&g);
            for (u, v) in pairs {
                let d_g = ex.graph_distance(u, v)?;
                let (d_l, d_h) = match ex.weighted_key(u, v) {
                    Ok(Some((w, h))) => (Some(w), Some(h)),
                    Ok(None) | Err(Error::State(_)) => (None, None),
                    Err(e) => return Err(e),
                };
                print_json(
                    out,
                    &json!({"u": u, "v": v, "d_g": d_g, "d_l": d_l, "d_h": d_h, "disconnected": d_g.is_none()}),
                )?;
            }
            Ok(())
        }
        Command::Greedy {
            graph,
            model,
            alpha,
            s0,
            from,
            variant,
        } => {
            let g = load_graph(&graph)?;
            let params = model.params()?;
            check_variant(&g, &params);
            let tau = power_law_exponent(&params)?;
            let plan = layer_plan(s0, g.t() as u64, alpha, tau, variant.variant())?;
            let layers = layers(&g, &plan, alpha)?;
            let mut ex = Explorer::new(&g);
            let (start, _) = ex
                .bfs_find(from, |w| layers.contains(0, w))?
                .ok_or_else(|| Error::domain(format!("no layer-0 vertex is reachable from {from}")))?;
            let trace = greedy_path_in(&g, start, &layers)?;
            let audit = audit_trace(&g, &trace, &layers);
            print_json(out, &json!({"plan": plan, "trace": trace, "audit": audit}))
        }
        Command::Experiment { config, output } => {
            let mut config = ExperimentConfig::load(&config)?;
            if output.is_some() {
                config.output = output;
            }
            let records = run_experiment(&config)?;
            let dir = config.output.clone().unwrap_or_else(|| PathBuf::from("."));
            write_outputs(&records, &dir)?;
            print_json(out, &json!({"records": records.len(), "output": dir, "config_digest": config.digest()}))
        }
        Command::Audit { dir } => {
            let report = audit_outputs(&dir)?;
            print_json(out, &report)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Error::State(format!("{} summary rows disagree with the records", report.mismatches.len())))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let error_json = cli.error_json;
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let code = e.exit_code();
            if error_json {
                let _ = writeln!(err, "{}", json!({"error": e.kind(), "message": e.to_string(), "exit_code": code}));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pafpp"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_and_predict() {
        let (code, out, _) = call(&["classify", "--dist", r#"{"family":"exponential","rate":1}"#]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "Explosive");

        let (code, out, _) = call(&["predict", "--model", "fpa", "--m", "2", "--delta", "-1", "--t", "1619"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["k_star"], 5);
    }

    #[test]
    fn errors_set_the_exit_status() {
        let (code, _, err) = call(&["experiment", "--config", "/nonexistent/missing.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing.json"));

        let (code, _, err) = call(&["--error-json", "classify", "--dist", r#"{"family":"exponential","rate":-1}"#]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["exit_code"], 2);

        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn generate_then_distances() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let p = path.to_str().unwrap();
        let dist = r#"{"family":"constant","value":1}"#;
        let (code, _, err) = call(&["generate", "--m", "2", "--delta", "-1", "--t", "300", "--dist", dist, "-o", p]);
        assert_eq!(code, 0, "{err}");
        let (code, out, _) = call(&["distances", "--graph", p, "--pairs", "1:300,5:17"]);
        assert_eq!(code, 0);
        let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 2);
        for l in &lines {
            assert_eq!(l["d_g"].as_f64(), l["d_l"].as_f64());
        }
    }
}
