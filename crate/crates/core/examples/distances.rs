//! Typical distances under an explosive and a conservative weight law on
//! the same graph, next to their predicted scales.

use pafpp::graph::{generate, ModelParams};
use pafpp::metrics::sample_typical_pair;
use pafpp::{predict, Explorer, LayerVariant, WeightDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn main() -> pafpp::Result<()> {
    let model = ModelParams::fpa(2, -1.0)?;
    let t = 200_000;
    let base = generate(&model, t, 1)?;
    let laws = [
        WeightDistribution::exponential(1.0)?,
        WeightDistribution::shifted(WeightDistribution::exponential(1.0)?, 1.0)?,
    ];
    for law in &laws {
        let graph = base.clone().with_weights(law, 2);
        let mut ex = Explorer::new(&graph);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (mut d_g, mut d_l, mut d_h) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..100 {
            let (u, v) = sample_typical_pair(t, &mut rng);
            if let (Some(g), Some((l, h))) = (ex.graph_distance(u, v)?, ex.weighted_key(u, v)?) {
                d_g.push(g as f64);
                d_l.push(l);
                d_h.push(h as f64);
            }
        }
        let p = predict(&model, t as u64, 0.5, law, None, LayerVariant::Tight)?;
        println!("{}", law.label());
        println!("  median d_G {:>6.2}   2K* = {}", median(d_g), 2 * p.k_star);
        println!("  median d_H {:>6.2}", median(d_h));
        println!("  median d_L {:>6.3}   2Q_t = {:.3}", median(d_l), 2.0 * p.q_t);
    }

    // A single shortest weighted path, spelled out.
    let graph = base.with_weights(&laws[0], 2);
    let path = pafpp::weighted_distance(&graph, t, t - 1)?;
    println!("lightest path {t} -> {}: {:?} (weight {:.4})", t - 1, path.vertices, path.weight);
    Ok(())
}
