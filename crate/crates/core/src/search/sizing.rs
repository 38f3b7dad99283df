//! Layout-level input counts for concatenated H-code schedules.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{
    acceptance_probability, e1_poly_unchecked, et_poly_unchecked, ProtocolKind, ProtocolSpec,
};

/// Raw inputs consumed by an `r`-round schedule in which round `q` runs a
/// `q`-level grid of `H_{k+4}` blocks on the previous round's outputs plus
/// fresh physical states.
///
/// The schedule produces `k^{r(r+1)/2}` outputs overall. Summing logical
/// and physical feeds gives
/// `k^R + (k+4) k^{R-1} + sum_{q=1..r} 2^{q-1} (k+4)^q k^{R-q}`.
pub fn total_input_count(r: u32, k: u64) -> Result<u128> {
    if r == 0 {
        return Err(Error::usage("at least one round is required"));
    }
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "k must be even and at least 2, got {k}"
        )));
    }
    let overflow = || Error::Domain(format!("input count overflows for r = {r}, k = {k}"));
    let big_r = r * (r + 1) / 2;
    let k = k as u128;
    let n = k + 4;
    let kp = |e: u32| k.checked_pow(e).ok_or_else(overflow);
    let np = |e: u32| n.checked_pow(e).ok_or_else(overflow);

    let mut total = kp(big_r)?
        .checked_add(n.checked_mul(kp(big_r - 1)?).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    for q in 1..=r {
        let term = (1u128 << (q - 1))
            .checked_mul(np(q)?)
            .and_then(|x| x.checked_mul(kp(big_r - q).ok()?))
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundRatio {
    pub round: u32,
    pub eps_out: f64,
    /// Raw inputs per output, ignoring rejection.
    pub inputs_per_output: f64,
    /// Same, divided by the cumulative acceptance of every block involved.
    pub inputs_per_output_with_rejection: f64,
}

/// Chains `E_1(eps, eps)`, `E_2(., eps)`, ..., `E_r(., eps)`, each round
/// fed by the previous round's outputs and fresh physical states, and
/// reports inputs per output after each round.
///
/// The ratio tends to `2^r + 1` as `eps -> 0`. At finite `eps` the
/// acceptance of a block with `2^{r-1}(k+4)^r` physical inputs is
/// `~exp(-2^{r-1} k^r eps)`, which is far from 1 for large `k`; that
/// effect is reported separately.
pub fn asymptotic_ratio_check(k: u64, eps: f64, r_max: u32) -> Result<Vec<RoundRatio>> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "k must be even and at least 2, got {k}"
        )));
    }
    if !(1..=4).contains(&r_max) {
        return Err(Error::usage("r_max must lie in [1, 4]"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps {eps} outside (0, 1)")));
    }
    let mut out = Vec::new();
    let (mut eps_l, mut cost, mut cost_rej) = (eps, 1.0f64, 1.0f64);
    for t in 1..=r_max {
        let (kind, poly) = if t == 1 {
            (ProtocolKind::H1 { k }, e1_poly_unchecked(k))
        } else {
            (ProtocolKind::Ml { t, k }, et_poly_unchecked(k, t))
        };
        let s = ProtocolSpec::counts(kind);
        let (l, p, o) = (
            s.inputs_logical as f64,
            s.inputs_physical as f64,
            s.outputs as f64,
        );
        let accept = acceptance_probability(&s, eps_l, eps);
        cost = (l * cost + p) / o;
        cost_rej = (l * cost_rej + p) / (o * accept);
        eps_l = poly.eval(eps_l, eps);
        out.push(RoundRatio {
            round: t,
            eps_out: eps_l,
            inputs_per_output: cost,
            inputs_per_output_with_rejection: cost_rej,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rounds_closed_form() {
        for k in (2..=20u64).step_by(2) {
            let k128 = k as u128;
            let want = 5 * k128.pow(3) + 24 * k128.pow(2) + 32 * k128;
            assert_eq!(total_input_count(2, k).unwrap(), want, "k = {k}");
        }
    }

    #[test]
    fn three_rounds_k10() {
        assert_eq!(total_input_count(3, 10).unwrap(), 18_696_000);
    }

    #[test]
    fn one_round_is_one_block() {
        assert_eq!(total_input_count(1, 2).unwrap(), 14);
        assert_eq!(total_input_count(1, 8).unwrap(), 3 * 8 + 8);
    }

    #[test]
    fn bad_arguments() {
        assert!(total_input_count(0, 10).is_err());
        assert!(total_input_count(2, 3).is_err());
        assert!(matches!(total_input_count(9, 1000), Err(Error::Domain(_))));
    }

    #[test]
    fn ratios_approach_powers_of_two_plus_one() {
        let r = asymptotic_ratio_check(10_000, 1e-8, 3).unwrap();
        for (row, want) in r.iter().zip([3.0, 5.0, 9.0]) {
            assert!(
                (row.inputs_per_output / want - 1.0).abs() < 0.005,
                "{row:?}"
            );
            assert!(row.inputs_per_output_with_rejection >= row.inputs_per_output);
        }
        let d1 = r[1].inputs_per_output - r[0].inputs_per_output;
        let d2 = r[2].inputs_per_output - r[1].inputs_per_output;
        assert!((d2 / d1 - 2.0).abs() < 0.02);
        assert!(r[2].eps_out < r[1].eps_out && r[1].eps_out < r[0].eps_out);
    }
}
