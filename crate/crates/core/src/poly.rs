//! Sparse bivariate polynomials in the logical and physical input error rates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// `Σ c_ij · ε_l^i · ε_p^j`, keyed by exponent pair `(i, j)`.
///
/// Single-variable error functions use the first variable only.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorPoly2 {
    terms: BTreeMap<(u32, u32), f64>,
}

impl ErrorPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), f64)>) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e.0, e.1, c);
        }
        p
    }

    /// Adds `c` to the coefficient of `ε_l^i ε_p^j`; zero coefficients are dropped.
    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        let slot = self.terms.entry((i, j)).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), f64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, eps_l: f64, eps_p: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * eps_l.powi(i as i32) * eps_p.powi(j as i32))
            .sum()
    }

    /// Evaluates a single-variable polynomial.
    pub fn eval1(&self, eps: f64) -> f64 {
        self.eval(eps, 1.0)
    }

    /// Keeps only terms of total degree `<= max_degree`.
    pub fn truncated(&self, max_degree: u32) -> Self {
        ErrorPoly2 {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j <= max_degree)
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// Terms of the lowest total degree present.
    pub fn leading(&self) -> Self {
        let Some(min) = self.terms.keys().map(|&(i, j)| i + j).min() else {
            return Self::new();
        };
        self.truncated(min)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self.terms.iter().map(|(&(i, j), &c)| (i, j, c)).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Self {
        Self::from_terms(json.terms.iter().map(|&(i, j, c)| ((i, j), c)))
    }
}

/// Wire form: `{"terms": [[i, j, coeff], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<(u32, u32, f64)>,
}

impl Serialize for ErrorPoly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ErrorPoly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_json(&PolyJson::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_and_coefficients() {
        let p = ErrorPoly2::from_terms([((2, 0), 1.0), ((0, 2), 6.0), ((1, 2), 6.0)]);
        assert_eq!(p.coeff(0, 2), 6.0);
        assert_eq!(p.coeff(3, 3), 0.0);
        assert_eq!(p.eval(0.0, 0.0), 0.0);
        assert!((p.eval(0.1, 0.2) - (0.01 + 0.24 + 0.024)).abs() < 1e-15);
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut p = ErrorPoly2::new();
        p.add_term(1, 1, 2.0);
        p.add_term(1, 1, -2.0);
        assert!(p.is_empty());
    }

    #[test]
    fn json_shape() {
        let p = ErrorPoly2::from_terms([((2, 0), 3.0), ((0, 4), 120.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[[0,4,120.0],[2,0,3.0]]}"#);
    }

    proptest! {
        #[test]
        fn json_roundtrip(terms in prop::collection::btree_map((0u32..8, 0u32..8), -1e3f64..1e3, 0..10)) {
            let p = ErrorPoly2::from_terms(terms.into_iter().filter(|(_, c)| *c != 0.0));
            let back: ErrorPoly2 = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
            prop_assert_eq!(p, back);
        }
    }
}
