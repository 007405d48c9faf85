//! Predicted distance scales as the graph grows: `K*_t`, `Q_t`, the
//! inner-core degree threshold and the greedy layer count.

use pafpp::graph::ModelParams;
use pafpp::{predict, LayerVariant, WeightDistribution};

fn main() -> pafpp::Result<()> {
    let model = ModelParams::fpa(2, -1.0)?;
    let dist = WeightDistribution::shifted(WeightDistribution::exponential(1.0)?, 1.0)?;
    println!("model {}, weights {}", model.label(), dist.label());
    println!("{:>12} {:>4} {:>8} {:>10} {:>4}", "t", "K*", "Q_t", "core deg", "K_t");
    for exp in [3, 4, 5, 6, 7, 8, 9, 12, 15] {
        let t = 10u64.pow(exp);
        let p = predict(&model, t, 0.5, &dist, Some(5.0), LayerVariant::Tight)?;
        let k_t = p.layer_plan.as_ref().map_or(0, |plan| plan.k_t);
        println!(
            "{t:>12.0e} {:>4} {:>8.3} {:>10.2} {k_t:>4}",
            p.k_star, p.q_t, p.inner_threshold
        );
    }
    Ok(())
}
