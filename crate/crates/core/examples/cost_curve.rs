//! Fits cost against log10(1/eps) over target exponents 5..=40, estimates
//! the scaling exponent gamma and writes the plot series.
//!
//! Run with `cargo run --release --example cost_curve [out.csv]`.

use std::path::PathBuf;

use mldistill::cli::emit_plot_data;
use mldistill::search::{pareto_search, SearchConfig};

fn main() -> Result<(), mldistill::Error> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("cost_curve.csv"));
    let set = pareto_search(&SearchConfig::default())?;
    let fit = emit_plot_data(&set, 5, 40, &path)?;
    for p in &fit.points {
        println!(
            "{:>3} {:>7.2} {:>8.2}  {}",
            p.target_exponent, p.achieved_neg_log10_eps, p.cost, p.protocol
        );
    }
    println!(
        "cost = {:.2} log10(1/eps) + {:.2}, gamma = {:.3}",
        fit.slope, fit.intercept, fit.gamma
    );
    println!("plot data written to {}", path.display());
    Ok(())
}
