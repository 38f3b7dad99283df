//! Exit criteria. Each test prints one `criterion N: PASS|FAIL` line with
//! the measured values, then asserts.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use mldistill::grid::{build_grid_code, y_distance};
use mldistill::hcodes::{build_hcode, code_distance_exhaustive, verify_transversal_hadamard};
use mldistill::oracle::{conditional_error, enumerate_exact, enumerate_truncated};
use mldistill::search::{
    asymptotic_ratio_check, evaluate, fit_cost_curve, pareto_search, query, total_input_count,
    Families, ParetoSet, SearchConfig,
};

const EPS0: f64 = 0.01;

/// Published optimal cost per target exponent 5..=30.
const C_ML: &[(i32, f64)] = &[
    (5, 27.93),
    (6, 56.07),
    (7, 57.38),
    (8, 67.52),
    (9, 100.3),
    (10, 110.7),
    (11, 110.7),
    (12, 113.7),
    (13, 120.4),
    (14, 126.9),
    (15, 158.5),
    (16, 187.9),
    (17, 195.5),
    (18, 239.8),
    (19, 272.1),
    (20, 273.3),
    (21, 275.1),
    (22, 278.0),
    (23, 281.9),
    (24, 287.9),
    (25, 295.7),
    (26, 311.5),
    (27, 333.3),
    (28, 355.6),
    (29, 363.7),
    (30, 369.3),
];

fn full() -> &'static (ParetoSet, Duration) {
    static SET: OnceLock<(ParetoSet, Duration)> = OnceLock::new();
    SET.get_or_init(|| {
        let t = Instant::now();
        let set = pareto_search(&SearchConfig::default()).unwrap();
        (set, t.elapsed())
    })
}

fn report(n: u32, pass: bool, detail: String) {
    println!(
        "criterion {n}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n}: {detail}");
}

fn within_rel(x: f64, want: f64, rel: f64) -> bool {
    (x / want - 1.0).abs() <= rel
}

#[test]
fn criterion_01_code_structure() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in (6..=24).step_by(2) {
        let code = build_hcode(n).unwrap();
        if !code.validate().ok() || !verify_transversal_hadamard(&code) {
            bad.push(n);
        }
    }
    let d6 = code_distance_exhaustive(&build_hcode(6).unwrap(), 16).unwrap();
    let d8 = code_distance_exhaustive(&build_hcode(8).unwrap(), 16).unwrap();
    let dt = t.elapsed();
    let pass = bad.is_empty() && d6 == 2 && d8 == 2 && dt < Duration::from_secs(5);
    report(
        1,
        pass,
        format!("invalid n {bad:?}, d(H6) = {d6}, d(H8) = {d8}, {dt:.2?}"),
    );
}

#[test]
fn criterion_02_grid_distance() {
    let t = Instant::now();
    let d66 = y_distance(&build_grid_code(&[6, 6]).unwrap(), 6).unwrap();
    let d68 = y_distance(&build_grid_code(&[6, 8]).unwrap(), 6).unwrap();
    let dt = t.elapsed();
    let pass = d66 == 4 && d68 == 4 && dt < Duration::from_secs(60);
    report(2, pass, format!("d(6x6) = {d66}, d(6x8) = {d68}, {dt:.2?}"));
}

#[test]
fn criterion_03_one_level_coefficients() {
    let t = Instant::now();
    let r = enumerate_exact(&build_grid_code(&[6]).unwrap()).unwrap();
    let dt = t.elapsed();
    let m = &r.marginal[0];
    let got = [m.count(2, 0), m.count(0, 2), m.count(1, 2)];
    let want = [1u64, 6, 6];
    let pass = r.configs_visited == 16384 && got == want && dt < Duration::from_secs(1);
    report(
        3,
        pass,
        format!(
            "(2,0),(0,2),(1,2) = {got:?} want {want:?}; eps_p^3 = {} (reported only); {} configs, {dt:.2?}",
            m.count(0, 3),
            r.configs_visited
        ),
    );
}

#[test]
fn criterion_04_two_level_coefficients() {
    let t = Instant::now();
    let r = enumerate_truncated(&build_grid_code(&[6, 6]).unwrap(), 4).unwrap();
    let dt = t.elapsed();
    let m = &r.marginal[0];
    let got = [m.count(2, 0), m.count(1, 2), m.count(0, 4)];
    let want = [3u64, 36, 120];
    let pass = got == want && dt < Duration::from_secs(300);
    report(
        4,
        pass,
        format!("(2,0),(1,2),(0,4) = {got:?} want {want:?}; {dt:.2?}"),
    );
}

#[test]
fn criterion_05_conditional_rate() {
    let r = enumerate_exact(&build_grid_code(&[6]).unwrap()).unwrap();
    let eps: f64 = 1e-3;
    let c = conditional_error(&r, eps, eps).unwrap();
    let ratio = c / (7.0 * eps * eps);
    report(
        5,
        within_rel(c, 7.0 * eps * eps, 0.05),
        format!("conditional {c:.4e}, ratio to 7 eps^2 {ratio:.4}"),
    );
}

#[test]
fn criterion_06_table_rows() {
    // (expression, -log10 eps, tolerance, cost, relative tolerance)
    let rows: [(&str, f64, f64, f64, f64); 4] = [
        ("BK(eps0)", 4.46, 0.02, 17.44, 0.01),
        ("BH[40](BK(eps0))", 6.83, 0.05, 56.07, 0.01),
        (
            "ML[2][24](BH[40](BK(eps0)),BK(eps0))",
            11.1,
            0.1,
            110.7,
            0.01,
        ),
        ("MEK(MEK(eps0))", 5.14, 0.02, 27.93, 0.02),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (expr, x, dx, c, rel) in rows {
        let e = evaluate(&expr.parse().unwrap(), EPS0).unwrap();
        let ok = (e.neg_log10_eps() - x).abs() <= dx && within_rel(e.cost, c, rel);
        pass &= ok;
        detail.push(format!("{expr}: {:.3}/{:.2}", e.neg_log10_eps(), e.cost));
    }
    let bk = pareto_search(&SearchConfig {
        families: Families::BK,
        ..SearchConfig::default()
    })
    .unwrap();
    let c_bk = query(&bk, 1e-5).unwrap().eval.cost;
    pass &= within_rel(c_bk, 261.5, 0.02);
    detail.push(format!("C_BK(1e-5) = {c_bk:.2}"));
    report(6, pass, detail.join("; "));
}

#[test]
fn criterion_07_search_envelope() {
    let (set, dt) = full();
    let mut worst = (0, 0.0f64);
    let mut over = Vec::new();
    for &(x, c_ml) in C_ML {
        let cost = query(set, 10f64.powi(-x)).unwrap().eval.cost;
        let ratio = cost / c_ml;
        if ratio > worst.1 {
            worst = (x, ratio);
        }
        if cost > c_ml * 1.05 {
            over.push(format!("1e-{x}: {cost:.1} vs {c_ml}"));
        }
    }
    let pass = over.is_empty() && *dt < Duration::from_secs(600);
    report(
        7,
        pass,
        format!(
            "worst ratio {:.3} at 1e-{}; over 1.05: {over:?}; search {dt:.2?}",
            worst.1, worst.0
        ),
    );
}

#[test]
fn criterion_08_cost_fit() {
    let fit = fit_cost_curve(&full().0, 5, 40).unwrap();
    let pass = (12.5..=15.5).contains(&fit.slope)
        && (-48.0..=-32.0).contains(&fit.intercept)
        && fit.gamma <= 1.3;
    report(
        8,
        pass,
        format!(
            "slope {:.2} in [12.5,15.5], intercept {:.2} in [-48,-32], gamma {:.3} <= 1.3",
            fit.slope, fit.intercept, fit.gamma
        ),
    );
}

#[test]
fn criterion_09_input_counts() {
    let mut bad = Vec::new();
    for k in (2u64..=20).step_by(2) {
        let want = 5 * k.pow(3) + 24 * k * k + 32 * k;
        if total_input_count(2, k).unwrap() != want as u128 {
            bad.push(k);
        }
    }
    let r3 = total_input_count(3, 10).unwrap();
    let pass = bad.is_empty() && (18_500_000..=19_000_000).contains(&r3);
    report(
        9,
        pass,
        format!("r=2 mismatches at k {bad:?}; total_input_count(3,10) = {r3}"),
    );
}

#[test]
fn criterion_10_asymptotics() {
    let ratios: Vec<f64> = asymptotic_ratio_check(10_000, 1e-8, 3)
        .unwrap()
        .iter()
        .map(|r| r.inputs_per_output)
        .collect();
    let pass = ratios.len() == 3
        && ratios
            .iter()
            .zip([3.0, 5.0, 9.0])
            .all(|(&x, w)| within_rel(x, w, 0.005));
    report(10, pass, format!("ratios {ratios:.4?} want [3, 5, 9]"));
}

#[test]
fn criterion_11_determinism() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_mldistill"))
            .args(["--threads", threads, "--emit", "csv", "search"])
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let one = run("1");
    let eight = run("8");
    let again = run("1");
    let pass = !one.is_empty() && one == eight && one == again;
    report(
        11,
        pass,
        format!("{} bytes, threads 1/8/1 identical: {pass}", one.len()),
    );
}
