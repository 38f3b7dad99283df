use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{
    acceptance_probability, output_poly, PriorTerms, ProtocolKind, ProtocolSpec, MAX_MODEL_EPS,
};
use crate::poly::ErrorPoly2;

use super::expr::ProtocolExpr;

/// Output infidelity, average raw inputs per output, and block acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProtocolEval {
    pub eps_out: f64,
    pub cost: f64,
    pub accept: f64,
}

impl ProtocolEval {
    pub fn source(eps0: f64) -> Self {
        ProtocolEval {
            eps_out: eps0,
            cost: 1.0,
            accept: 1.0,
        }
    }

    pub fn neg_log10_eps(&self) -> f64 {
        -self.eps_out.log10()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalOptions {
    pub prior_terms: PriorTerms,
    /// Largest error rate allowed to enter any protocol.
    pub max_input_eps: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            prior_terms: PriorTerms::Leading,
            max_input_eps: MAX_MODEL_EPS,
        }
    }
}

/// A protocol with its polynomial and counts resolved once.
#[derive(Clone, Debug)]
pub struct CompiledProtocol {
    pub spec: ProtocolSpec,
    poly: ErrorPoly2,
    max_input_eps: f64,
}

impl CompiledProtocol {
    pub fn new(kind: ProtocolKind, opts: &EvalOptions) -> Result<Self> {
        Ok(CompiledProtocol {
            spec: ProtocolSpec::new(kind)?,
            poly: output_poly(kind, opts.prior_terms)?,
            max_input_eps: opts.max_input_eps,
        })
    }

    pub fn kind(&self) -> ProtocolKind {
        self.spec.kind
    }

    /// Applies the protocol to its logical and physical sources. For
    /// single-source protocols pass the same value twice.
    pub fn apply(&self, logical: &ProtocolEval, physical: &ProtocolEval) -> Result<ProtocolEval> {
        for e in [logical.eps_out, physical.eps_out] {
            if !(e >= 0.0 && e <= self.max_input_eps) {
                return Err(Error::Domain(format!(
                    "input error {e} outside [0, {}] for {}",
                    self.max_input_eps,
                    self.kind()
                )));
            }
        }
        let s = &self.spec;
        let two = s.kind.is_two_source();
        let eps_out = if two {
            self.poly.eval(logical.eps_out, physical.eps_out)
        } else {
            self.poly.eval1(logical.eps_out)
        };
        let accept = if two {
            acceptance_probability(s, logical.eps_out, physical.eps_out)
        } else {
            acceptance_probability(s, logical.eps_out, 0.0)
        };
        let cost = (s.inputs_logical as f64 * logical.cost
            + s.inputs_physical as f64 * physical.cost)
            / (s.outputs as f64 * accept);
        Ok(ProtocolEval {
            eps_out,
            cost,
            accept,
        })
    }
}

fn check_eps0(eps0: f64) -> Result<()> {
    if !(eps0 > 0.0 && eps0 <= MAX_MODEL_EPS) {
        return Err(Error::Domain(format!(
            "source error {eps0} outside (0, {MAX_MODEL_EPS}]"
        )));
    }
    Ok(())
}

pub fn evaluate(expr: &ProtocolExpr, eps0: f64) -> Result<ProtocolEval> {
    evaluate_with(expr, eps0, &EvalOptions::default())
}

pub fn evaluate_with(expr: &ProtocolExpr, eps0: f64, opts: &EvalOptions) -> Result<ProtocolEval> {
    check_eps0(eps0)?;
    eval_rec(expr, eps0, opts)
}

fn eval_rec(expr: &ProtocolExpr, eps0: f64, opts: &EvalOptions) -> Result<ProtocolEval> {
    match expr {
        ProtocolExpr::Source => Ok(ProtocolEval::source(eps0)),
        ProtocolExpr::Single { kind, input } => {
            let a = eval_rec(input, eps0, opts)?;
            CompiledProtocol::new(*kind, opts)?.apply(&a, &a)
        }
        ProtocolExpr::Double {
            kind,
            logical,
            physical,
        } => {
            let a = eval_rec(logical, eps0, opts)?;
            let b = eval_rec(physical, eps0, opts)?;
            CompiledProtocol::new(*kind, opts)?.apply(&a, &b)
        }
    }
}
