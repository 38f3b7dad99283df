//! Brute-force evaluation of one- and two-level H-code distillation under
//! independent Y errors.
//!
//! Every input magic state flips independently: each encoded input with
//! probability `ε_l`, each of the two ancillas consumed per site by the
//! controlled-Hadamard with probability `ε_p`. Propagation rules:
//!
//! * the Hadamard-basis measurement sees the parity of all encoded-input
//!   errors plus all first-ancilla errors;
//! * the stabilizer round sees, per site, first XOR second ancilla error;
//! * the block is kept iff the measurement parity is even and the
//!   hierarchical syndrome of the residual is clean;
//! * a kept output is wrong iff its input error XOR the residual's logical
//!   Y action is set.
//!
//! Results are exact integer counts per weight class `(|L|, |A|+|B|)`,
//! expanded to polynomials on demand.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::grid::{hierarchical_syndrome, GridCode};
use crate::poly::ErrorPoly2;

/// Largest total bit count `enumerate_exact` accepts.
pub const MAX_EXACT_BITS: usize = 26;

/// Default cap on configurations visited by `enumerate_truncated`.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorConfig {
    pub logical_bits: BitVec,
    pub first_gate_bits: BitVec,
    pub second_gate_bits: BitVec,
}

impl ErrorConfig {
    pub fn clean(grid: &GridCode) -> Self {
        ErrorConfig {
            logical_bits: BitVec::zeros(grid.n_encoded()),
            first_gate_bits: BitVec::zeros(grid.n_sites()),
            second_gate_bits: BitVec::zeros(grid.n_sites()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub accepted: bool,
    pub output_error_bits: BitVec,
}

fn check_supported(grid: &GridCode) -> Result<()> {
    if grid.levels() > 2 {
        return Err(Error::Unsupported(format!(
            "{}-level grids need repeated Hadamard measurements; the oracle covers t <= 2",
            grid.levels()
        )));
    }
    Ok(())
}

/// Reference classification through the level-by-level syndrome.
pub fn classify_config(grid: &GridCode, cfg: &ErrorConfig) -> Result<Classification> {
    check_supported(grid)?;
    if cfg.logical_bits.len() != grid.n_encoded()
        || cfg.first_gate_bits.len() != grid.n_sites()
        || cfg.second_gate_bits.len() != grid.n_sites()
    {
        return Err(Error::usage("error configuration does not match grid size"));
    }
    let flag_odd = (cfg.logical_bits.count_ones() + cfg.first_gate_bits.count_ones()) % 2 == 1;
    let residual = cfg.first_gate_bits.xor(&cfg.second_gate_bits);
    let syn = hierarchical_syndrome(grid, &residual)?;
    let accepted = !flag_odd && !syn.detected;
    let output_error_bits = if accepted {
        cfg.logical_bits.xor(&syn.logical_y_bits)
    } else {
        BitVec::zeros(grid.n_encoded())
    };
    Ok(Classification {
        accepted,
        output_error_bits,
    })
}

/// Classifier over 128-bit masks using the lifted linear checks.
#[derive(Clone, Debug)]
struct FastClassifier {
    checks: Vec<u128>,
    reads: Vec<u128>,
}

impl FastClassifier {
    fn new(grid: &GridCode) -> Result<Self> {
        if grid.n_sites() > 128 || grid.n_encoded() > 128 {
            return Err(Error::Budget(format!(
                "grid with {} sites is too large for the oracle",
                grid.n_sites()
            )));
        }
        Ok(FastClassifier {
            checks: grid
                .y_checks()
                .iter()
                .map(|c| c.support.to_u128())
                .collect(),
            reads: grid.logical_reads().iter().map(BitVec::to_u128).collect(),
        })
    }

    /// Output error mask if accepted.
    #[inline]
    fn classify(&self, l: u128, a: u128, b: u128) -> Option<u128> {
        if (l.count_ones() + a.count_ones()) & 1 == 1 {
            return None;
        }
        let r = a ^ b;
        if self.checks.iter().any(|&c| (r & c).count_ones() & 1 == 1) {
            return None;
        }
        let mut syn = 0u128;
        for (q, &m) in self.reads.iter().enumerate() {
            syn |= (((r & m).count_ones() & 1) as u128) << q;
        }
        Some(l ^ syn)
    }
}

/// Counts of configurations per weight class `(logical errors, physical errors)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCounts {
    n_logical: usize,
    n_physical: usize,
    #[serde(serialize_with = "serialize_counts")]
    counts: BTreeMap<(u32, u32), u64>,
}

/// JSON object keys must be strings, so classes go out as `[i, j, count]`.
fn serialize_counts<S: serde::Serializer>(
    counts: &BTreeMap<(u32, u32), u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(counts.iter().map(|(&(i, j), &c)| (i, j, c)))
}

impl WeightCounts {
    fn new(n_logical: usize, n_physical: usize) -> Self {
        WeightCounts {
            n_logical,
            n_physical,
            counts: BTreeMap::new(),
        }
    }

    fn bump(&mut self, i: u32, j: u32) {
        *self.counts.entry((i, j)).or_insert(0) += 1;
    }

    fn merge(&mut self, other: &WeightCounts) {
        for (&k, &v) in &other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
    }

    /// Number of configurations with `i` logical and `j` physical errors.
    pub fn count(&self, i: u32, j: u32) -> u64 {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn classes(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    /// Probability mass `Σ count · ε_l^i (1-ε_l)^{L-i} · ε_p^j (1-ε_p)^{P-j}`.
    pub fn eval(&self, eps_l: f64, eps_p: f64) -> f64 {
        let nl = self.n_logical as i32;
        let np = self.n_physical as i32;
        self.counts
            .iter()
            .map(|(&(i, j), &c)| {
                let (i, j) = (i as i32, j as i32);
                c as f64
                    * eps_l.powi(i)
                    * (1.0 - eps_l).powi(nl - i)
                    * eps_p.powi(j)
                    * (1.0 - eps_p).powi(np - j)
            })
            .sum()
    }

    /// Monomial expansion, keeping terms of total degree `<= max_degree`.
    pub fn to_poly(&self, max_degree: Option<u32>) -> ErrorPoly2 {
        let cap = max_degree.unwrap_or(u32::MAX);
        let mut acc: BTreeMap<(u32, u32), i128> = BTreeMap::new();
        for (&(i, j), &c) in &self.counts {
            if i + j > cap {
                continue;
            }
            let rl = (self.n_logical as u32 - i).min(cap - i - j);
            for a in 0..=rl {
                let cl = binomial(self.n_logical as u64 - i as u64, a as u64) as i128;
                let rp = (self.n_physical as u32 - j).min(cap - i - j - a);
                for b in 0..=rp {
                    let cp = binomial(self.n_physical as u64 - j as u64, b as u64) as i128;
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    *acc.entry((i + a, j + b)).or_insert(0) += sign * c as i128 * cl * cp;
                }
            }
        }
        ErrorPoly2::from_terms(
            acc.into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(e, c)| (e, c as f64)),
        )
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Exact,
    MaxWeight(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub dims: Vec<usize>,
    pub n_logical: usize,
    pub n_physical: usize,
    pub configs_visited: u64,
    pub truncation: Truncation,
    pub accept: WeightCounts,
    /// Per output: accepted and that output wrong.
    pub marginal: Vec<WeightCounts>,
    pub joint_all_correct: WeightCounts,
}

impl OracleResult {
    fn degree_cap(&self) -> Option<u32> {
        match self.truncation {
            Truncation::Exact => None,
            Truncation::MaxWeight(w) => Some(w),
        }
    }

    pub fn accept_poly(&self) -> ErrorPoly2 {
        self.accept.to_poly(self.degree_cap())
    }

    pub fn marginal_poly(&self, output: usize) -> ErrorPoly2 {
        self.marginal[output].to_poly(self.degree_cap())
    }

    pub fn joint_all_correct_poly(&self) -> ErrorPoly2 {
        self.joint_all_correct.to_poly(self.degree_cap())
    }

    /// Upper bound on probability mass of configurations beyond the
    /// truncation weight, at per-bit error `eps_max`.
    pub fn tail_bound(&self, eps_max: f64) -> f64 {
        let Truncation::MaxWeight(w) = self.truncation else {
            return 0.0;
        };
        let bits = (self.n_logical + self.n_physical) as u64;
        ((w as u64 + 1)..=bits)
            .map(|v| binomial(bits, v) as f64 * eps_max.powi(v as i32))
            .sum()
    }

    /// All outputs share the same marginal counts.
    pub fn marginals_symmetric(&self) -> bool {
        self.marginal.windows(2).all(|w| w[0].counts == w[1].counts)
    }
}

#[derive(Clone, Debug)]
struct Tally {
    accept: WeightCounts,
    marginal: Vec<WeightCounts>,
    all_correct: WeightCounts,
    visited: u64,
}

impl Tally {
    fn new(n_out: usize, nl: usize, np: usize) -> Self {
        Tally {
            accept: WeightCounts::new(nl, np),
            marginal: vec![WeightCounts::new(nl, np); n_out],
            all_correct: WeightCounts::new(nl, np),
            visited: 0,
        }
    }

    #[inline]
    fn record(&mut self, fc: &FastClassifier, l: u128, a: u128, b: u128) {
        self.visited += 1;
        let Some(out) = fc.classify(l, a, b) else {
            return;
        };
        let i = l.count_ones();
        let j = a.count_ones() + b.count_ones();
        self.accept.bump(i, j);
        if out == 0 {
            self.all_correct.bump(i, j);
        } else {
            let mut rest = out;
            while rest != 0 {
                let q = rest.trailing_zeros() as usize;
                self.marginal[q].bump(i, j);
                rest &= rest - 1;
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.accept.merge(&other.accept);
        self.all_correct.merge(&other.all_correct);
        for (m, o) in self.marginal.iter_mut().zip(&other.marginal) {
            m.merge(o);
        }
        self.visited += other.visited;
        self
    }

    fn into_result(self, grid: &GridCode, truncation: Truncation) -> OracleResult {
        OracleResult {
            dims: grid.dims().to_vec(),
            n_logical: grid.n_encoded(),
            n_physical: 2 * grid.n_sites(),
            configs_visited: self.visited,
            truncation,
            accept: self.accept,
            marginal: self.marginal,
            joint_all_correct: self.all_correct,
        }
    }
}

/// Splits a flat bit index into (logical, first ancilla, second ancilla) masks.
#[derive(Clone, Copy)]
struct Layout {
    nl: usize,
    ns: usize,
}

impl Layout {
    #[inline]
    fn set(&self, idx: usize, masks: &mut (u128, u128, u128)) {
        if idx < self.nl {
            masks.0 ^= 1 << idx;
        } else if idx < self.nl + self.ns {
            masks.1 ^= 1 << (idx - self.nl);
        } else {
            masks.2 ^= 1 << (idx - self.nl - self.ns);
        }
    }
}

/// Visits all `2^bits` configurations.
pub fn enumerate_exact(grid: &GridCode) -> Result<OracleResult> {
    check_supported(grid)?;
    let nl = grid.n_encoded();
    let ns = grid.n_sites();
    let bits = nl + 2 * ns;
    if bits > MAX_EXACT_BITS {
        return Err(Error::Budget(format!(
            "{bits} error bits exceed the exact limit of {MAX_EXACT_BITS}; use enumerate_truncated"
        )));
    }
    let fc = FastClassifier::new(grid)?;
    let lmask = (1u64 << nl) - 1;
    let smask = (1u64 << ns) - 1;
    let total = 1u64 << bits;
    let chunk = 1u64 << 12;
    let n_chunks = total.div_ceil(chunk);
    let tally = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::new(nl, nl, 2 * ns);
            for cfg in c * chunk..((c + 1) * chunk).min(total) {
                let l = (cfg & lmask) as u128;
                let a = ((cfg >> nl) & smask) as u128;
                let b = ((cfg >> (nl + ns)) & smask) as u128;
                t.record(&fc, l, a, b);
            }
            t
        })
        .reduce(|| Tally::new(nl, nl, 2 * ns), Tally::merge);
    Ok(tally.into_result(grid, Truncation::Exact))
}

/// Visits every configuration of total Hamming weight `<= max_weight`.
/// Coefficients of total degree `<= max_weight` are exact.
pub fn enumerate_truncated(grid: &GridCode, max_weight: u32) -> Result<OracleResult> {
    enumerate_truncated_with_budget(grid, max_weight, DEFAULT_BUDGET)
}

pub fn enumerate_truncated_with_budget(
    grid: &GridCode,
    max_weight: u32,
    budget: u64,
) -> Result<OracleResult> {
    check_supported(grid)?;
    let fc = FastClassifier::new(grid)?;
    let nl = grid.n_encoded();
    let ns = grid.n_sites();
    let bits = nl + 2 * ns;
    let needed: u128 = (0..=max_weight as u64)
        .map(|w| binomial(bits as u64, w))
        .sum();
    if needed > budget as u128 {
        return Err(Error::Budget(format!(
            "{needed} configurations at weight <= {max_weight} exceed budget {budget}"
        )));
    }
    let layout = Layout { nl, ns };
    let mut base = Tally::new(nl, nl, 2 * ns);
    base.record(&fc, 0, 0, 0);
    let rest = (0..bits)
        .into_par_iter()
        .map(|first| {
            let mut t = Tally::new(nl, nl, 2 * ns);
            let mut masks = (0u128, 0u128, 0u128);
            layout.set(first, &mut masks);
            t.record(&fc, masks.0, masks.1, masks.2);
            extend(
                &fc,
                layout,
                bits,
                first + 1,
                max_weight as usize - 1,
                masks,
                &mut t,
            );
            t
        })
        .reduce(|| Tally::new(nl, nl, 2 * ns), Tally::merge);
    let tally = if max_weight == 0 {
        base
    } else {
        base.merge(rest)
    };
    Ok(tally.into_result(grid, Truncation::MaxWeight(max_weight)))
}

fn extend(
    fc: &FastClassifier,
    layout: Layout,
    bits: usize,
    start: usize,
    remaining: usize,
    masks: (u128, u128, u128),
    t: &mut Tally,
) {
    if remaining == 0 {
        return;
    }
    for idx in start..bits {
        let mut m = masks;
        layout.set(idx, &mut m);
        t.record(fc, m.0, m.1, m.2);
        extend(fc, layout, bits, idx + 1, remaining - 1, m, t);
    }
}

/// Output error on output 0 conditioned on acceptance.
pub fn conditional_error(result: &OracleResult, eps_l: f64, eps_p: f64) -> Result<f64> {
    let accept = result.accept.eval(eps_l, eps_p);
    if accept <= 0.0 {
        return Err(Error::Domain(format!(
            "acceptance probability is zero at ({eps_l}, {eps_p})"
        )));
    }
    Ok(result.marginal[0].eval(eps_l, eps_p) / accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid_code;
    use proptest::prelude::*;

    fn cfg(grid: &GridCode, l: &[usize], a: &[usize], b: &[usize]) -> ErrorConfig {
        ErrorConfig {
            logical_bits: BitVec::from_indices(grid.n_encoded(), l.iter().copied()),
            first_gate_bits: BitVec::from_indices(grid.n_sites(), a.iter().copied()),
            second_gate_bits: BitVec::from_indices(grid.n_sites(), b.iter().copied()),
        }
    }

    #[test]
    fn clean_config_is_accepted_without_errors() {
        let g = build_grid_code(&[6]).unwrap();
        let c = classify_config(&g, &ErrorConfig::clean(&g)).unwrap();
        assert!(c.accepted && c.output_error_bits.is_zero());
    }

    #[test]
    fn single_input_error_rejected() {
        let g = build_grid_code(&[6]).unwrap();
        assert!(
            !classify_config(&g, &cfg(&g, &[0], &[], &[]))
                .unwrap()
                .accepted
        );
    }

    #[test]
    fn double_ancilla_error_on_one_site_passes_with_input_error() {
        let g = build_grid_code(&[6]).unwrap();
        let c = classify_config(&g, &cfg(&g, &[0], &[2], &[2])).unwrap();
        assert!(c.accepted);
        assert_eq!(c.output_error_bits.ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn three_levels_unsupported() {
        let g = build_grid_code(&[6, 6, 6]).unwrap();
        assert!(matches!(
            classify_config(&g, &ErrorConfig::clean(&g)),
            Err(Error::Unsupported(_))
        ));
        assert!(enumerate_exact(&g).is_err());
    }

    #[test]
    fn exact_limit_enforced() {
        let g = build_grid_code(&[12]).unwrap();
        assert!(matches!(enumerate_exact(&g), Err(Error::Budget(_))));
    }

    #[test]
    fn truncated_budget_enforced() {
        let g = build_grid_code(&[6, 6]).unwrap();
        assert!(matches!(
            enumerate_truncated_with_budget(&g, 4, 1000),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(76, 4), 1_282_975);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(10, 0), 1);
    }

    #[test]
    fn h6_exact_counts() {
        let g = build_grid_code(&[6]).unwrap();
        let r = enumerate_exact(&g).unwrap();
        assert_eq!(r.configs_visited, 1 << 14);
        assert!(r.marginals_symmetric());
        let m = &r.marginal[0];
        assert_eq!(m.count(2, 0), 1);
        assert_eq!(m.count(0, 2), 6);
        // same-site ancilla pairs (6) plus the other input's error riding a
        // weight-2 logical residual with one ancilla before the CNOT (6)
        assert_eq!(m.count(1, 2), 12);
        // four weight-3 representatives of the output's logical Y, times
        // four even-parity before/after splits
        assert_eq!(m.count(0, 3), 16);
        assert_eq!(r.accept.count(0, 0), 1);
    }

    #[test]
    fn truncated_matches_exact_on_shared_classes() {
        let g = build_grid_code(&[6]).unwrap();
        let exact = enumerate_exact(&g).unwrap();
        let trunc = enumerate_truncated(&g, 4).unwrap();
        for ((i, j), c) in trunc.marginal[0].classes() {
            assert_eq!(exact.marginal[0].count(i, j), c);
        }
        for ((i, j), c) in exact.accept.classes().filter(|((i, j), _)| i + j <= 4) {
            assert_eq!(trunc.accept.count(i, j), c);
        }
        let pe = exact.marginal_poly(0).truncated(4);
        assert_eq!(pe, trunc.marginal_poly(0));
    }

    #[test]
    fn polynomial_at_origin() {
        let g = build_grid_code(&[6]).unwrap();
        let r = enumerate_exact(&g).unwrap();
        assert_eq!(r.accept_poly().coeff(0, 0), 1.0);
        assert_eq!(r.marginal_poly(0).eval(0.0, 0.0), 0.0);
        assert_eq!(conditional_error(&r, 0.0, 0.0).unwrap(), 0.0);
        assert!((r.accept.eval(0.3, 0.2) - r.accept_poly().eval(0.3, 0.2)).abs() < 1e-12);
    }

    #[test]
    fn exact_probabilities_sum_to_one() {
        // accepted-all-correct + accepted-some-wrong + rejected = 1 with
        // the unaccepted mass recomputed by brute force over k=2 outputs
        let g = build_grid_code(&[6]).unwrap();
        let r = enumerate_exact(&g).unwrap();
        let (el, ep): (f64, f64) = (0.07, 0.11);
        let mut rejected = 0.0;
        let mut wrong_any = 0.0;
        for c in 0u32..(1 << 14) {
            let l = (c & 3) as u128;
            let a = ((c >> 2) & 63) as u128;
            let b = ((c >> 8) & 63) as u128;
            let p = {
                let (i, j) = (
                    l.count_ones() as i32,
                    (a.count_ones() + b.count_ones()) as i32,
                );
                el.powi(i) * (1.0 - el).powi(2 - i) * ep.powi(j) * (1.0 - ep).powi(12 - j)
            };
            let cl = cfg(
                &g,
                &BitVec::from_u128(2, l).ones().collect::<Vec<_>>(),
                &BitVec::from_u128(6, a).ones().collect::<Vec<_>>(),
                &BitVec::from_u128(6, b).ones().collect::<Vec<_>>(),
            );
            let out = classify_config(&g, &cl).unwrap();
            if !out.accepted {
                rejected += p;
            } else if !out.output_error_bits.is_zero() {
                wrong_any += p;
            }
        }
        let total = rejected + wrong_any + r.joint_all_correct.eval(el, ep);
        assert!((total - 1.0).abs() < 1e-12);
        assert!((1.0 - rejected - r.accept.eval(el, ep)).abs() < 1e-12);
    }

    #[test]
    fn h6_outputs_are_correlated() {
        let g = build_grid_code(&[6]).unwrap();
        let r = enumerate_exact(&g).unwrap();
        let (el, ep) = (1e-3, 1e-3);
        let acc = r.accept.eval(el, ep);
        let joint = r.joint_all_correct.eval(el, ep) / acc;
        let m = r.marginal[0].eval(el, ep) / acc;
        let independent = (1.0 - m) * (1.0 - m);
        // P(both wrong) ~ 3ε² is of the same order as each marginal
        assert!((joint - independent).abs() > 1e-6);
    }

    fn arb_config(grid: &GridCode) -> impl Strategy<Value = ErrorConfig> {
        let nl = grid.n_encoded();
        let ns = grid.n_sites();
        (
            prop::collection::vec(prop::bool::weighted(0.2), nl),
            prop::collection::vec(prop::bool::weighted(0.1), ns),
            prop::collection::vec(prop::bool::weighted(0.1), ns),
        )
            .prop_map(|(l, a, b)| ErrorConfig {
                logical_bits: BitVec::from_bools(&l),
                first_gate_bits: BitVec::from_bools(&a),
                second_gate_bits: BitVec::from_bools(&b),
            })
    }

    proptest! {
        #[test]
        fn fast_path_agrees_with_hierarchical_syndrome(
            (dims, c) in prop_oneof![Just(vec![6]), Just(vec![8]), Just(vec![6, 6]), Just(vec![6, 8])]
                .prop_flat_map(|d| {
                    let g = build_grid_code(&d).unwrap();
                    (Just(d), arb_config(&g))
                })
        ) {
            let g = build_grid_code(&dims).unwrap();
            let fc = FastClassifier::new(&g).unwrap();
            let reference = classify_config(&g, &c).unwrap();
            let fast = fc.classify(
                c.logical_bits.to_u128(),
                c.first_gate_bits.to_u128(),
                c.second_gate_bits.to_u128(),
            );
            prop_assert_eq!(fast.is_some(), reference.accepted);
            if let Some(out) = fast {
                prop_assert_eq!(out, reference.output_error_bits.to_u128());
            }
        }

        #[test]
        fn doubled_site_error_keeps_acceptance(
            (c, site) in arb_config(&build_grid_code(&[6, 6]).unwrap()).prop_flat_map(|c| (Just(c), 0usize..36))
        ) {
            let g = build_grid_code(&[6, 6]).unwrap();
            let mut flipped = c.clone();
            flipped.first_gate_bits.flip(site);
            flipped.second_gate_bits.flip(site);
            let a = classify_config(&g, &c).unwrap();
            let b = classify_config(&g, &flipped).unwrap();
            // residual unchanged, flag parity flips
            prop_assert!(!(a.accepted && b.accepted));
            let mut twice = flipped.clone();
            twice.first_gate_bits.flip(site);
            twice.second_gate_bits.flip(site);
            prop_assert_eq!(classify_config(&g, &twice).unwrap(), a);
        }

        #[test]
        fn swapping_index_qubits_permutes_outputs(
            (c, i, j) in arb_config(&build_grid_code(&[10]).unwrap())
                .prop_flat_map(|c| (Just(c), 0usize..6, 0usize..6))
        ) {
            let g = build_grid_code(&[10]).unwrap();
            let swap_bits = |v: &BitVec, x: usize, y: usize| {
                let mut out = v.clone();
                out.set(x, v.get(y));
                out.set(y, v.get(x));
                out
            };
            let permuted = ErrorConfig {
                logical_bits: swap_bits(&c.logical_bits, i, j),
                first_gate_bits: swap_bits(&c.first_gate_bits, i + 4, j + 4),
                second_gate_bits: swap_bits(&c.second_gate_bits, i + 4, j + 4),
            };
            let a = classify_config(&g, &c).unwrap();
            let b = classify_config(&g, &permuted).unwrap();
            prop_assert_eq!(a.accepted, b.accepted);
            prop_assert_eq!(swap_bits(&a.output_error_bits, i, j), b.output_error_bits);
        }
    }
}
