//! Builds the H-code family and the two-level grids, and checks their
//! structure, transversal Hadamard and distances.
//!
//! Run with `cargo run --release --example hcodes`.

use mldistill::grid::{build_grid_code, y_distance};
use mldistill::hcodes::{build_hcode, code_distance_exhaustive, verify_transversal_hadamard};

fn main() -> Result<(), mldistill::Error> {
    println!(
        "{:>3} {:>3} {:>10} {:>9} {:>8}",
        "n", "k", "structure", "hadamard", "distance"
    );
    for n in (6..=24).step_by(2) {
        let code = build_hcode(n)?;
        let distance = if n <= 10 {
            code_distance_exhaustive(&code, 10)?.to_string()
        } else {
            "-".into()
        };
        println!(
            "{n:>3} {:>3} {:>10} {:>9} {distance:>8}",
            code.k(),
            code.validate().ok(),
            verify_transversal_hadamard(&code),
        );
    }

    for dims in [[6, 6], [6, 8], [8, 8]] {
        let grid = build_grid_code(&dims)?;
        println!(
            "grid {}x{}: {} sites, {} outputs, {} checks, Y-distance {}",
            dims[0],
            dims[1],
            grid.n_sites(),
            grid.n_encoded(),
            grid.y_checks().len(),
            y_distance(&grid, 6)?
        );
    }
    Ok(())
}
