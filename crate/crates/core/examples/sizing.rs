//! Exact input counts of multilevel protocols and the per-round growth of
//! inputs per output at large block size.
//!
//! Run with `cargo run --release --example sizing`.

use mldistill::search::{asymptotic_ratio_check, total_input_count};

fn main() -> Result<(), mldistill::Error> {
    println!("{:>4} {:>12} {:>16} {:>22}", "k", "r = 1", "r = 2", "r = 3");
    for k in [2u64, 4, 10, 20, 100] {
        println!(
            "{k:>4} {:>12} {:>16} {:>22}",
            total_input_count(1, k)?,
            total_input_count(2, k)?,
            total_input_count(3, k)?
        );
    }

    let (k, eps) = (10_000, 1e-8);
    println!("\nk = {k}, eps = {eps:e}");
    for r in asymptotic_ratio_check(k, eps, 4)? {
        println!(
            "round {}: eps_out {:.3e}, inputs/output {:.4}, with rejection {:.4e}",
            r.round, r.eps_out, r.inputs_per_output, r.inputs_per_output_with_rejection
        );
    }
    Ok(())
}
