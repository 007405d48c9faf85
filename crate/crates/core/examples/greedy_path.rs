//! Builds the degree layers of a graph, walks a greedy path from low-degree
//! vertices up to the inner core, and audits each trace.

use pafpp::graph::{generate, ModelParams};
use pafpp::pathfinder::{audit_trace, greedy_path_in, layers};
use pafpp::{layer_plan, weighted_distance, LayerVariant, WeightDistribution};

fn main() -> pafpp::Result<()> {
    let model = ModelParams::fpa(2, -1.0)?;
    let t = 100_000;
    let graph = generate(&model, t, 21)?.with_weights(&WeightDistribution::exponential(1.0)?, 22);
    let plan = layer_plan(3.0, t as u64, 0.5, 2.5, LayerVariant::Tight)?;
    println!("thresholds {:.2?}, K_t = {}", plan.s, plan.k_t);

    let ls = layers(&graph, &plan, 0.5)?;
    for k in 0..ls.count() {
        println!("layer {k}: {} vertices", ls.layer(k).len());
    }
    let starts: Vec<u32> = ls.layer(0).iter().rev().step_by(997).take(8).copied().collect();
    for start in starts {
        let trace = greedy_path_in(&graph, start, &ls)?;
        let audit = audit_trace(&graph, &trace, &ls);
        let direct = weighted_distance(&graph, start, trace.endpoint())?.weight;
        println!(
            "{start:>6} -> {:>5}: {:?}, weight {:.3} (lightest {:.3}), audit {}",
            trace.endpoint(),
            trace.outcome,
            trace.total_weight,
            direct,
            if audit.passed() { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}
