//! Closed-form output-error polynomials, acceptance probabilities and
//! input/output counts for each distillation protocol.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ErrorPoly2;

/// Largest code parameter `k` for one-level and multilevel H-code distillers.
pub const MAX_HCODE_K: u64 = 20;

/// Largest `k` accepted for triorthogonal (3k+8)-to-k distillation.
pub const MAX_BH_K: u64 = 1000;

/// Upper end of the input error range the models are meant for.
pub const MAX_MODEL_EPS: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProtocolKind {
    /// 15-to-1.
    Bk,
    /// 10-to-2.
    Mek,
    /// Triorthogonal (3k+8)-to-k.
    Bh { k: u64 },
    /// One-level H-code with separate logical and physical sources.
    H1 { k: u64 },
    /// `t`-level square multilevel H-code, side `k + 4`.
    Ml { t: u32, k: u64 },
}

impl ProtocolKind {
    /// Two-source protocols take a logical and a physical input.
    pub fn is_two_source(&self) -> bool {
        matches!(self, ProtocolKind::H1 { .. } | ProtocolKind::Ml { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let even_in = |k: u64, max: u64| k >= 2 && k <= max && k.is_multiple_of(2);
        match *self {
            ProtocolKind::Bk | ProtocolKind::Mek => Ok(()),
            ProtocolKind::Bh { k } if even_in(k, MAX_BH_K) => Ok(()),
            ProtocolKind::H1 { k } if even_in(k, MAX_HCODE_K) => Ok(()),
            ProtocolKind::Ml { t, k } if (2..=4).contains(&t) && even_in(k, MAX_HCODE_K) => Ok(()),
            other => Err(Error::usage(format!(
                "protocol parameters out of range: {other}"
            ))),
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProtocolKind::Bk => write!(f, "BK"),
            ProtocolKind::Mek => write!(f, "MEK"),
            ProtocolKind::Bh { k } => write!(f, "BH[{k}]"),
            ProtocolKind::H1 { k } => write!(f, "H1[{k}]"),
            ProtocolKind::Ml { t, k } => write!(f, "ML[{t}][{}]", k + 4),
        }
    }
}

/// Input and output counts of one protocol block.
///
/// Single-source protocols report all of their inputs as logical.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    pub inputs_logical: u64,
    pub inputs_physical: u64,
    pub outputs: u64,
}

impl ProtocolSpec {
    pub fn new(kind: ProtocolKind) -> Result<Self> {
        kind.validate()?;
        Ok(Self::counts(kind))
    }

    /// Counts without range checks, for asymptotic studies at large `k`.
    pub fn counts(kind: ProtocolKind) -> Self {
        let (l, p, o) = match kind {
            ProtocolKind::Bk => (15, 0, 1),
            ProtocolKind::Mek => (10, 0, 2),
            ProtocolKind::Bh { k } => (3 * k + 8, 0, k),
            ProtocolKind::H1 { k } => (k, 2 * (k + 4), k),
            ProtocolKind::Ml { t, k } => {
                let out = k.pow(t);
                (out, (1u64 << (t - 1)) * (k + 4).pow(t), out)
            }
        };
        ProtocolSpec {
            kind,
            inputs_logical: l,
            inputs_physical: p,
            outputs: o,
        }
    }

    pub fn total_inputs(&self) -> u64 {
        self.inputs_logical + self.inputs_physical
    }
}

fn check_hcode_k(k: u64) -> Result<()> {
    if !(2..=MAX_HCODE_K).contains(&k) || !k.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "k must be even in [2, {MAX_HCODE_K}], got {k}"
        )));
    }
    Ok(())
}

/// One-level `H_{k+4}` output error per distilled state.
pub fn e1_poly(k: u64) -> Result<ErrorPoly2> {
    check_hcode_k(k)?;
    Ok(e1_poly_unchecked(k))
}

pub fn e1_poly_unchecked(k: u64) -> ErrorPoly2 {
    let kf = k as f64;
    let quartic = if k >= 4 {
        (kf - 1.0) * (kf - 2.0) * (kf - 3.0) / 6.0
    } else {
        0.0
    };
    ErrorPoly2::from_terms([
        ((2, 0), kf - 1.0),
        ((0, 2), 2.0 * (kf + 1.0)),
        ((0, 3), 4.0),
        ((1, 2), kf + 4.0),
        ((1, 3), 8.0 * (kf - 1.0)),
        ((4, 0), quartic),
    ])
}

/// Two-level `(k+4) x (k+4)` output error per distilled state.
pub fn e2_poly(k: u64) -> Result<ErrorPoly2> {
    check_hcode_k(k)?;
    Ok(e2_poly_unchecked(k))
}

pub fn e2_poly_unchecked(k: u64) -> ErrorPoly2 {
    let kf = k as f64;
    ErrorPoly2::from_terms([
        ((2, 0), kf * kf - 1.0),
        ((0, 4), 8.0 * (kf * kf + 4.0 * kf + 3.0)),
        ((1, 2), (kf + 4.0).powi(2)),
    ])
}

/// Leading terms at `t` levels of concatenation, `2 <= t <= 4`.
pub fn et_poly(k: u64, t: u32) -> Result<ErrorPoly2> {
    check_hcode_k(k)?;
    if !(2..=4).contains(&t) {
        return Err(Error::usage(format!(
            "level count must be in [2, 4], got {t}"
        )));
    }
    Ok(et_poly_unchecked(k, t))
}

pub fn et_poly_unchecked(k: u64, t: u32) -> ErrorPoly2 {
    let kf = k as f64;
    let ti = t as i32;
    let physical = 2f64.powi((1 << t) + ti - 3) * (kf + 1.0) * (kf + 3.0).powi(ti - 1);
    let mixed = (kf + 4.0).powi(ti * (1 << (t - 2)));
    ErrorPoly2::from_terms([
        ((2, 0), kf.powi(ti) - 1.0),
        ((0, 1 << t), physical),
        ((1, 1 << (t - 1)), mixed),
    ])
}

/// How many Taylor terms of the prior single-source protocols to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum PriorTerms {
    #[default]
    Leading,
    Full,
}

/// Single-variable error function of BK, MEK or BH(k).
pub fn prior_protocol_poly(kind: ProtocolKind, terms: PriorTerms) -> Result<ErrorPoly2> {
    let full = terms == PriorTerms::Full;
    let p = match kind {
        ProtocolKind::Bk if full => {
            ErrorPoly2::from_terms([((3, 0), 35.0), ((4, 0), 105.0), ((5, 0), 378.0)])
        }
        ProtocolKind::Bk => ErrorPoly2::from_terms([((3, 0), 35.0)]),
        ProtocolKind::Mek if full => {
            ErrorPoly2::from_terms([((2, 0), 9.0), ((3, 0), -56.0), ((4, 0), 160.0)])
        }
        ProtocolKind::Mek => ErrorPoly2::from_terms([((2, 0), 9.0)]),
        ProtocolKind::Bh { k } => {
            kind.validate()?;
            ErrorPoly2::from_terms([((2, 0), 3.0 * k as f64 + 1.0)])
        }
        other => {
            return Err(Error::usage(format!(
                "{other} is a two-source protocol; use e1_poly/e2_poly/et_poly"
            )))
        }
    };
    Ok(p)
}

/// Output-error polynomial used when evaluating `kind` on two inputs.
/// Single-source protocols use the first variable only.
pub fn output_poly(kind: ProtocolKind, prior: PriorTerms) -> Result<ErrorPoly2> {
    match kind {
        ProtocolKind::H1 { k } => e1_poly(k),
        ProtocolKind::Ml { t: 2, k } => e2_poly(k),
        ProtocolKind::Ml { t, k } => et_poly(k, t),
        _ => prior_protocol_poly(kind, prior),
    }
}

/// Probability that no input carries an error.
pub fn acceptance_probability(spec: &ProtocolSpec, eps_l: f64, eps_p: f64) -> f64 {
    let survive = |eps: f64, n: u64| ((-eps).ln_1p() * n as f64).exp();
    survive(eps_l, spec.inputs_logical) * survive(eps_p, spec.inputs_physical)
}
