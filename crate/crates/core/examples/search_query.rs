//! Builds the Pareto front of distillation protocols and queries the
//! cheapest protocol for a few target error rates.
//!
//! Run with `cargo run --release --example search_query`.

use mldistill::search::{pareto_search, query, Families, SearchConfig};

fn main() -> Result<(), mldistill::Error> {
    for (name, families) in [
        ("bk", Families::BK),
        ("bk,mek", Families::UP_TO_MEK),
        ("all", Families::ALL),
    ] {
        let set = pareto_search(&SearchConfig {
            families,
            ..SearchConfig::default()
        })?;
        println!("{name}: {} Pareto entries", set.len());
        for x in [5, 10, 15, 20] {
            match query(&set, 10f64.powi(-x)) {
                Ok(e) => println!(
                    "  1e-{x}: cost {:8.2}  eps {:.2e}  {}",
                    e.eval.cost, e.eval.eps_out, e.expr
                ),
                Err(err) => println!("  1e-{x}: {err}"),
            }
        }
    }
    Ok(())
}
