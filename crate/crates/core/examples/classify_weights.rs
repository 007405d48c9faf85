//! Sorts a handful of edge-weight laws into explosive and conservative.
//!
//! ```text
//! cargo run --example classify_weights
//! cargo run --example classify_weights -- '{"family":"weibull","shape":0.5,"scale":1}'
//! ```

use pafpp::{explosion_characteristic, WeightDistribution};

fn main() -> pafpp::Result<()> {
    let laws: Vec<WeightDistribution> = match std::env::args().nth(1) {
        Some(json) => vec![serde_json::from_str(&json)?],
        None => vec![
            WeightDistribution::exponential(1.0)?,
            WeightDistribution::uniform(0.0, 1.0)?,
            WeightDistribution::weibull(2.0, 1.0)?,
            WeightDistribution::constant(1.0)?,
            WeightDistribution::shifted(WeightDistribution::exponential(1.0)?, 1.0)?,
            WeightDistribution::uniform(0.5, 2.0)?,
        ],
    };

    println!("{:<28} {:<13} {:>12}  tightness", "law", "class", "I(L) approx");
    for law in &laws {
        law.validate()?;
        let c = explosion_characteristic(law, 64, 1e-12)?;
        println!(
            "{:<28} {:<13} {:>12.6}  {:?}",
            law.label(),
            format!("{:?}", c.class),
            c.i_estimate,
            c.tightness
        );
    }
    Ok(())
}
