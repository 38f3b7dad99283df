//! Evaluates the published optimal protocol for each target exponent and
//! compares it with what the search finds under the same error models.
//!
//! Run with `cargo run --release --example table_one`.

use mldistill::search::{evaluate, pareto_search, query, SearchConfig};

/// (target exponent, published -log10 eps_out, protocol, published cost)
const ROWS: &[(u32, f64, &str, f64)] = &[
    (4, 4.46, "BK(eps0)", 17.44),
    (5, 5.14, "MEK(MEK(eps0))", 27.93),
    (6, 6.83, "BH[40](BK(eps0))", 56.07),
    (7, 7.11, "ML[2][12](BK(eps0),MEK(eps0))", 57.38),
    (8, 8.06, "ML[2][10](MEK(MEK(eps0)),MEK(eps0))", 67.52),
    (9, 9.08, "ML[2][10](MEK(BH[2](eps0)),BH[2](eps0))", 100.3),
    (10, 11.1, "ML[2][24](BH[40](BK(eps0)),BK(eps0))", 110.7),
    (11, 11.1, "ML[2][24](BH[40](BK(eps0)),BK(eps0))", 110.7),
    (12, 12.1, "ML[2][24](ML[2][10](BK(eps0),MEK(eps0)),BK(eps0))", 113.7),
    (13, 13.0, "ML[2][24](ML[2][10](BH[8](MEK(eps0)),MEK(eps0)),BK(eps0))", 120.4),
    (14, 14.1, "ML[2][24](ML[2][10](MEK(MEK(eps0)),MEK(eps0)),BK(eps0))", 126.9),
    (15, 15.0, "ML[2][14](ML[2][10](MEK(MEK(eps0)),MEK(eps0)),BH[10](MEK(eps0)))", 158.5),
    (16, 16.3, "ML[2][24](ML[2][10](BH[40](BK(eps0)),MEK(eps0)),MEK(MEK(eps0)))", 187.9),
    (17, 17.0, "ML[2][22](ML[2][24](BH[40](BK(eps0)),BK(eps0)),MEK(MEK(eps0)))", 195.5),
    (18, 18.0, "ML[2][20](ML[2][24](BH[38](BK(eps0)),BK(eps0)),MEK(BH[40](eps0)))", 239.8),
    (19, 19.5, "ML[2][24](ML[2][24](BH[40](BK(eps0)),BK(eps0)),BH[40](BK(eps0)))", 272.1),
    (20, 20.0, "ML[2][24](ML[2][24](BH[30](BK(eps0)),BK(eps0)),BH[40](BK(eps0)))", 273.3),
    (21, 21.6, "ML[2][24](ML[2][24](ML[2][10](BK(eps0),MEK(eps0)),BK(eps0)),BH[40](BK(eps0)))", 275.1),
    (22, 22.0, "ML[2][24](ML[2][20](ML[2][10](BK(eps0),MEK(eps0)),BK(eps0)),BH[40](BK(eps0)))", 278.0),
    (23, 23.3, "ML[2][24](ML[2][24](ML[2][10](BH[8](MEK(eps0)),MEK(eps0)),BK(eps0)),BH[40](BK(eps0)))", 281.9),
    (24, 24.2, "ML[2][24](ML[2][24](ML[2][10](BH[6](MEK(eps0)),MEK(eps0)),BK(eps0)),ML[2][12](BK(eps0),MEK(eps0)))", 287.9),
    (25, 25.1, "ML[3][16](ML[2][22](ML[2][10](MEK(MEK(eps0)),MEK(eps0)),BK(eps0)),MEK(MEK(eps0)))", 295.7),
    (26, 26.1, "ML[3][16](ML[2][14](ML[2][10](MEK(MEK(eps0)),MEK(eps0)),BK(eps0)),MEK(MEK(eps0)))", 311.5),
    (27, 27.1, "ML[3][16](ML[2][24](ML[2][10](MEK(BH[2](eps0)),MEK(eps0)),BH[6](MEK(eps0))),MEK(MEK(eps0)))", 333.3),
    (28, 28.1, "ML[3][16](ML[2][18](ML[2][10](MEK(BH[2](eps0)),MEK(eps0)),MEK(MEK(eps0))),MEK(MEK(eps0)))", 355.6),
    (29, 29.3, "ML[3][16](ML[2][18](ML[2][10](BH[40](BK(eps0)),MEK(eps0)),MEK(MEK(eps0))),MEK(MEK(eps0)))", 363.7),
    (30, 30.7, "ML[3][16](ML[2][24](ML[2][24](BH[40](BK(eps0)),BK(eps0)),MEK(MEK(eps0))),MEK(MEK(eps0)))", 369.3),
    (31, 31.0, "ML[3][16](ML[2][20](ML[2][24](BH[40](BK(eps0)),BK(eps0)),MEK(MEK(eps0))),MEK(MEK(eps0)))", 376.5),
    (32, 32.4, "ML[3][16](ML[2][24](ML[2][24](BH[40](BK(eps0)),BK(eps0)),MEK(BH[2](eps0))),MEK(MEK(eps0)))", 411.5),
    (33, 33.0, "ML[3][14](ML[2][20](ML[2][24](BH[38](BK(eps0)),BK(eps0)),MEK(BH[2](eps0))),MEK(MEK(eps0)))", 427.3),
    (34, 35.2, "ML[3][16](ML[2][24](ML[2][24](BH[40](BK(eps0)),BK(eps0)),BH[40](BK(eps0))),MEK(MEK(eps0)))", 459.4),
    (35, 35.2, "ML[3][16](ML[2][24](ML[2][24](BH[40](BK(eps0)),BK(eps0)),BH[40](BK(eps0))),MEK(MEK(eps0)))", 459.4),
    (36, 36.1, "ML[3][24](ML[2][24](ML[2][24](BH[30](BK(eps0)),BK(eps0)),BH[40](BK(eps0))),BH[40](BK(eps0)))", 470.8),
    (37, 37.3, "ML[3][24](ML[2][24](ML[2][24](ML[2][12](BK(eps0),MEK(eps0)),BK(eps0)),BH[40](BK(eps0))),BH[40](BK(eps0)))", 471.0),
    (38, 39.4, "ML[3][24](ML[2][24](ML[2][24](ML[2][10](BK(eps0),MEK(eps0)),BK(eps0)),BH[40](BK(eps0))),BH[40](BK(eps0)))", 472.6),
    (39, 39.4, "ML[3][24](ML[2][24](ML[2][24](ML[2][10](BK(eps0),MEK(eps0)),BK(eps0)),BH[40](BK(eps0))),BH[40](BK(eps0)))", 472.6),
];

fn main() -> Result<(), mldistill::Error> {
    let eps0 = 0.01;
    let set = pareto_search(&SearchConfig::default())?;
    println!(
        "{:>3} | {:>6} {:>7} | {:>6} {:>7} | {:>6} {:>7} {:>6}",
        "x", "paper", "C", "model", "C", "search", "C", "ratio"
    );
    for &(x, paper_eps, expr, paper_cost) in ROWS {
        let e = evaluate(&expr.parse()?, eps0)?;
        let best = query(&set, 10f64.powi(-(x as i32)))?;
        println!(
            "{x:>3} | {paper_eps:>6.2} {paper_cost:>7.2} | {:>6.2} {:>7.2} | {:>6.2} {:>7.2} {:>6.3}",
            e.neg_log10_eps(),
            e.cost,
            best.eval.neg_log10_eps(),
            best.eval.cost,
            best.eval.cost / paper_cost,
        );
    }
    Ok(())
}
