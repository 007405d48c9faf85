//! Runs an experiment config and prints its summary table.
//!
//! ```text
//! cargo run --release --example run_experiment -- examples/configs/explosion_vs_conservative.json out/
//! ```

use pafpp::harness::{summarize_records, write_outputs, ExperimentConfig};

fn main() -> pafpp::Result<()> {
    let mut args = std::env::args().skip(1);
    let config_path = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/distance_scaling.json").to_string()
    });
    let config = ExperimentConfig::load(&config_path)?;
    println!("{} (digest {})", config.kind, &config.digest()[..12]);

    let records = pafpp::harness::run_experiment(&config)?;
    if let Some(dir) = args.next() {
        write_outputs(&records, &dir)?;
        println!("wrote {} records to {dir}", records.len());
    }
    println!(
        "{:<28} {:>8} {:<20} {:>6} {:>9} {:>9} {:>10}",
        "weights", "t", "metric", "n", "median", "iqr", "predicted"
    );
    for row in summarize_records(&records) {
        let predicted = row.prediction.map_or(String::from("-"), |p| format!("{p:.3}"));
        println!(
            "{:<28} {:>8} {:<20} {:>6} {:>9.3} {:>9.3} {:>10}",
            row.weight_label, row.t, row.metric, row.count, row.median, row.iqr, predicted
        );
    }
    Ok(())
}
