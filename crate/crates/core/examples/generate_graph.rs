//! Grows a weighted graph, writes it to disk, reads it back and prints its
//! degree profile.
//!
//! ```text
//! cargo run --release --example generate_graph -- 100000 graph.txt
//! ```

use pafpp::graph::{generate, ModelParams, Vertex};
use pafpp::harness::{fit_tail_exponent, load_graph, save_graph};
use pafpp::{power_law_exponent, WeightDistribution};

fn main() -> pafpp::Result<()> {
    let mut args = std::env::args().skip(1);
    let t: Vertex = args.next().map_or(100_000, |s| s.parse().expect("t is an integer"));
    let scratch = tempfile_path();
    let path = args.next().map_or(scratch, Into::into);

    let model = ModelParams::fpa(2, -1.0)?;
    let graph = generate(&model, t, 7)?.with_weights(&WeightDistribution::exponential(1.0)?, 8);
    save_graph(&graph, &path)?;
    let graph = load_graph(&path)?;
    println!("{} vertices, {} edges in {}", graph.t(), graph.edge_count(), path.display());

    let degrees: Vec<f64> = (1..=graph.t()).map(|v| graph.degree(v) as f64).collect();
    let hubs: Vec<usize> = (1..=5).map(|v| graph.degree(v)).collect();
    println!("degrees of vertices 1..=5: {hubs:?}");
    let fit = fit_tail_exponent(&degrees, 0.05, 11)?;
    println!(
        "Hill estimate of tau: {:.3} +/- {:.3} (model value {})",
        fit.tau_hat,
        fit.std_err,
        power_law_exponent(&model)?
    );
    Ok(())
}

fn tempfile_path() -> std::path::PathBuf {
    std::env::temp_dir().join("pafpp-example-graph.txt")
}
