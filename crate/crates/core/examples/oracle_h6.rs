//! Enumerates every error configuration of the one-level H6 protocol and
//! compares the accepted-and-wrong counts with the closed-form model.
//!
//! Run with `cargo run --release --example oracle_h6`.

use mldistill::grid::build_grid_code;
use mldistill::models::e1_poly;
use mldistill::oracle::{conditional_error, enumerate_exact};

fn main() -> Result<(), mldistill::Error> {
    let grid = build_grid_code(&[6])?;
    let result = enumerate_exact(&grid)?;
    println!(
        "{} configurations, {} inputs, {} ancillas, symmetric marginals: {}",
        result.configs_visited,
        result.n_logical,
        result.n_physical,
        result.marginals_symmetric()
    );

    let model = e1_poly(2)?;
    println!("{:>6} {:>8} {:>8}", "(i,j)", "counted", "model");
    for ((i, j), count) in result.marginal[0]
        .classes()
        .filter(|&((i, j), _)| i + j <= 4)
    {
        println!(
            "{:>6} {count:>8} {:>8}",
            format!("({i},{j})"),
            model.coeff(i, j)
        );
    }

    for eps in [1e-2, 1e-3, 1e-4] {
        let c = conditional_error(&result, eps, eps)?;
        println!(
            "eps {eps:.0e}: conditional error {c:.4e} = {:.3} eps^2",
            c / (eps * eps)
        );
    }
    Ok(())
}
