//! The `[[n, n-4, 2]]` H-code family.
//!
//! Qubits are 0-indexed here; the textbook labels 1..n map to 0..n-1, so
//! the preamble is `{0,1,2,3}` and index qubit `i` (0-based logical) is
//! physical qubit `i + 4`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{in_group, PauliString, MAX_QUBITS};

/// Largest `n` that `code_distance_exhaustive` will scan by default.
pub const DEFAULT_DISTANCE_SCAN_MAX_N: usize = 10;

/// A stabilizer code with explicit logical operator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    stabilizers: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
}

/// Outcome of the structural checks run on a code.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub stabilizers_commute: bool,
    pub logicals_commute_with_stabilizers: bool,
    pub logical_pairing: bool,
    pub no_weight_one_logicals: bool,
}

impl CodeReport {
    pub fn ok(&self) -> bool {
        self.stabilizers_commute
            && self.logicals_commute_with_stabilizers
            && self.logical_pairing
            && self.no_weight_one_logicals
    }
}

impl StabilizerCode {
    /// Builds a code and verifies commutation, pairing and the absence of
    /// weight-one logical operators.
    pub fn new(
        stabilizers: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
    ) -> Result<Self> {
        let code = Self::from_parts_unchecked(stabilizers, logical_x, logical_z)?;
        let report = code.validate();
        if !report.ok() {
            return Err(Error::usage(format!("invalid stabilizer code: {report:?}")));
        }
        Ok(code)
    }

    /// Builds a code checking only that all operators act on the same qubits.
    pub fn from_parts_unchecked(
        stabilizers: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
    ) -> Result<Self> {
        let n = stabilizers
            .first()
            .or(logical_x.first())
            .map(PauliString::n)
            .ok_or_else(|| Error::usage("code needs at least one operator"))?;
        if logical_x.len() != logical_z.len() {
            return Err(Error::usage("logical X and Z lists differ in length"));
        }
        if stabilizers
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .any(|p| p.n() != n)
        {
            return Err(Error::usage("operators act on differing qubit counts"));
        }
        Ok(StabilizerCode {
            n,
            stabilizers,
            logical_x,
            logical_z,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    pub fn validate(&self) -> CodeReport {
        let comm = |a: &PauliString, b: &PauliString| a.commutes(b).unwrap_or(false);
        let stabilizers_commute = self
            .stabilizers
            .iter()
            .enumerate()
            .all(|(i, a)| self.stabilizers[i + 1..].iter().all(|b| comm(a, b)));
        let logicals_commute_with_stabilizers = self
            .logical_x
            .iter()
            .chain(&self.logical_z)
            .all(|l| self.stabilizers.iter().all(|s| comm(l, s)));
        let k = self.k();
        let logical_pairing = (0..k).all(|i| {
            (0..k).all(|j| {
                comm(&self.logical_x[i], &self.logical_z[j]) == (i != j)
                    && (i == j || comm(&self.logical_x[i], &self.logical_x[j]))
                    && (i == j || comm(&self.logical_z[i], &self.logical_z[j]))
            })
        });
        let no_weight_one_logicals = (0..self.n).all(|q| {
            [
                PauliString::xs(self.n, [q]),
                PauliString::zs(self.n, [q]),
                PauliString::ys(self.n, [q]),
            ]
            .iter()
            .all(|p| !self.is_in_normalizer(p) || self.is_stabilizer(p))
        });
        CodeReport {
            stabilizers_commute,
            logicals_commute_with_stabilizers,
            logical_pairing,
            no_weight_one_logicals,
        }
    }

    pub fn is_in_normalizer(&self, p: &PauliString) -> bool {
        self.stabilizers
            .iter()
            .all(|s| s.commutes(p).unwrap_or(false))
    }

    pub fn is_stabilizer(&self, p: &PauliString) -> bool {
        in_group(p, &self.stabilizers)
    }

    /// Stabilizers as lists of 0-based qubit indices, tagged by type.
    pub fn describe(&self) -> CodeDescription {
        let idx = |p: &PauliString| {
            let x: Vec<usize> = p.x_bits().ones().collect();
            let z: Vec<usize> = p.z_bits().ones().collect();
            OperatorDescription { x, z }
        };
        CodeDescription {
            n: self.n,
            k: self.k(),
            stabilizers: self.stabilizers.iter().map(idx).collect(),
            logical_x: self.logical_x.iter().map(idx).collect(),
            logical_z: self.logical_z.iter().map(idx).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorDescription {
    pub x: Vec<usize>,
    pub z: Vec<usize>,
}

/// JSON-facing form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeDescription {
    pub n: usize,
    pub k: usize,
    pub stabilizers: Vec<OperatorDescription>,
    pub logical_x: Vec<OperatorDescription>,
    pub logical_z: Vec<OperatorDescription>,
}

/// Checks that `n` is a legal H-code block length.
pub fn check_block_length(n: usize) -> Result<()> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "H-code block length must be even and at least 6, got {n}"
        )));
    }
    if n > MAX_QUBITS {
        return Err(Error::usage(format!("n = {n} exceeds limit {MAX_QUBITS}")));
    }
    Ok(())
}

/// Preamble-plus-index supports of the two stabilizer shapes: `{0,1,2,3}`
/// and `{0,1,4,...,n-1}`.
pub fn hcode_check_supports(n: usize) -> [Vec<usize>; 2] {
    [vec![0, 1, 2, 3], [0, 1].into_iter().chain(4..n).collect()]
}

/// Support `{0, 2, i+4}` of the i-th logical X/Z/Y representative.
pub fn hcode_logical_support(i: usize) -> [usize; 3] {
    [0, 2, i + 4]
}

pub fn build_hcode(n: usize) -> Result<StabilizerCode> {
    check_block_length(n)?;
    let [short, long] = hcode_check_supports(n);
    let stabilizers = vec![
        PauliString::xs(n, short.iter().copied()),
        PauliString::zs(n, short.iter().copied()),
        PauliString::xs(n, long.iter().copied()),
        PauliString::zs(n, long.iter().copied()),
    ];
    let k = n - 4;
    let logical_x = (0..k)
        .map(|i| PauliString::xs(n, hcode_logical_support(i)))
        .collect();
    let logical_z = (0..k)
        .map(|i| PauliString::zs(n, hcode_logical_support(i)))
        .collect();
    StabilizerCode::new(stabilizers, logical_x, logical_z)
}

/// True iff exchanging X and Z maps every stabilizer generator into the
/// stabilizer group and maps each logical X onto the matching logical Z.
pub fn verify_transversal_hadamard(code: &StabilizerCode) -> bool {
    let stabs = code.stabilizers();
    stabs.iter().all(|s| in_group(&s.hadamard(), stabs))
        && code
            .logical_x()
            .iter()
            .zip(code.logical_z())
            .all(|(x, z)| x.hadamard() == *z)
}

/// Minimum weight of a normalizer element outside the stabilizer group,
/// found by scanning all `4^n` Pauli strings.
pub fn code_distance_exhaustive(code: &StabilizerCode, max_n: usize) -> Result<usize> {
    let n = code.n();
    if n > max_n || n > 16 {
        return Err(Error::usage(format!(
            "n = {n} exceeds the exhaustive scan limit {}; use the Y-sector search (y_distance) instead",
            max_n.min(16)
        )));
    }
    let mask = |b: &crate::bits::BitVec| b.to_u128() as u32;
    let gens: Vec<(u32, u32)> = code
        .stabilizers()
        .iter()
        .map(|s| (mask(s.x_bits()), mask(s.z_bits())))
        .collect();

    // all stabilizer group elements
    let indep = crate::pauli::independent_generators(code.stabilizers());
    if indep.len() > 20 {
        return Err(Error::usage("stabilizer group too large to tabulate"));
    }
    let indep: Vec<(u32, u32)> = indep
        .iter()
        .map(|s| (mask(s.x_bits()), mask(s.z_bits())))
        .collect();
    let mut group = HashSet::with_capacity(1 << indep.len());
    let (mut gx, mut gz) = (0u32, 0u32);
    group.insert((0u32, 0u32));
    for step in 1u32..(1u32 << indep.len()) {
        let (fx, fz) = indep[step.trailing_zeros() as usize];
        gx ^= fx;
        gz ^= fz;
        group.insert((gx, gz));
    }

    let mut best = usize::MAX;
    for x in 0u32..(1u32 << n) {
        for z in 0u32..(1u32 << n) {
            let w = (x | z).count_ones() as usize;
            if w == 0 || w >= best {
                continue;
            }
            let commutes = gens
                .iter()
                .all(|&(sx, sz)| ((x & sz).count_ones() + (z & sx).count_ones()) % 2 == 0);
            if commutes && !group.contains(&(x, z)) {
                best = w;
            }
        }
    }
    if best == usize::MAX {
        return Err(Error::usage("code has no logical operators"));
    }
    Ok(best)
}
