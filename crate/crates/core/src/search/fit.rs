use serde::Serialize;

use crate::error::{Error, Result};

use super::pareto::{query, ParetoSet};

/// One query result: cheapest protocol meeting `10^-exponent`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub target_exponent: u32,
    pub achieved_neg_log10_eps: f64,
    pub cost: f64,
    pub protocol: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    /// Cost per decade of output error.
    pub slope: f64,
    pub intercept: f64,
    /// Exponent in `cost ~ ln(eps0/eps)^gamma`.
    pub gamma: f64,
    pub points: Vec<CurvePoint>,
}

/// Queries the set once per integer exponent in `lo..=hi`.
pub fn cost_curve(set: &ParetoSet, lo: u32, hi: u32) -> Result<Vec<CurvePoint>> {
    if lo > hi {
        return Err(Error::usage(format!("empty exponent range {lo}..={hi}")));
    }
    (lo..=hi)
        .map(|x| {
            let e = query(set, 10f64.powi(-(x as i32)))?;
            Ok(CurvePoint {
                target_exponent: x,
                achieved_neg_log10_eps: e.eval.neg_log10_eps(),
                cost: e.eval.cost,
                protocol: e.expr.to_string(),
            })
        })
        .collect()
}

/// Ordinary least squares `y = a x + b`.
fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return Err(Error::usage(format!(
            "need at least two points to fit, got {}",
            xs.len()
        )));
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::usage("fit points share a single abscissa"));
    }
    let a = sxy / sxx;
    Ok((a, my - a * mx))
}

/// Linear fit of cost against achieved `log10(1/eps)`, plus the log-log
/// scaling exponent over exponents `>= 10`.
pub fn fit_cost_curve(set: &ParetoSet, lo: u32, hi: u32) -> Result<FitResult> {
    let points = cost_curve(set, lo, hi)?;
    fit_points(set.eps0, points)
}

pub fn fit_points(eps0: f64, points: Vec<CurvePoint>) -> Result<FitResult> {
    let xs: Vec<f64> = points.iter().map(|p| p.achieved_neg_log10_eps).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.cost).collect();
    let (slope, intercept) = least_squares(&xs, &ys)?;

    let tail: Vec<&CurvePoint> = points.iter().filter(|p| p.target_exponent >= 10).collect();
    let lx: Vec<f64> = tail
        .iter()
        .map(|p| ((p.achieved_neg_log10_eps + eps0.log10()) * std::f64::consts::LN_10).ln())
        .collect();
    let ly: Vec<f64> = tail.iter().map(|p| p.cost.ln()).collect();
    let (gamma, _) = least_squares(&lx, &ly)?;

    Ok(FitResult {
        slope,
        intercept,
        gamma,
        points,
    })
}
