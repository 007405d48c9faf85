//! Growth of weighted neighbourhoods around a root: `beta_k` (distance to the
//! `k`-th graph-distance sphere) and `sigma_n` (radius holding `n` vertices).

use pafpp::graph::{generate, ModelParams};
use pafpp::{main_term_sum, power_law_exponent, Explorer, Metric, WeightDistribution};

fn main() -> pafpp::Result<()> {
    let model = ModelParams::fpa(2, -1.0)?;
    let law = WeightDistribution::shifted(WeightDistribution::exponential(1.0)?, 1.0)?;
    let tau = power_law_exponent(&model)?;
    let graph = generate(&model, 100_000, 4)?.with_weights(&law, 5);
    let mut ex = Explorer::new(&graph);
    let root = 50_000;

    println!("root {root}, degree {}", graph.degree(root));
    println!("{:>2} {:>8} {:>10} {:>8}", "k", "|sphere|", "beta_k", "main");
    let betas = ex.beta_profile(root, 6)?;
    for (k, beta) in betas.iter().enumerate() {
        let sphere = ex.boundary(root, k as u32)?.len();
        println!("{k:>2} {sphere:>8} {beta:>10.4} {:>8.4}", main_term_sum(k as u32, tau, &law)?);
    }
    for n in [10, 100, 1000, 10_000] {
        let r = ex.sigma_n(root, n)?;
        let ball = ex.ball(root, Metric::L, r)?;
        println!("sigma_{n} = {r:.4}, ball of that radius holds {} vertices", ball.len());
    }
    Ok(())
}
