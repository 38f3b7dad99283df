//! Phase-free Pauli operators on `n` qubits.
//!
//! A Pauli string is stored as its X and Z support. Signs and factors of
//! `i` are dropped throughout: equality, products and group membership
//! are all up to global phase.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::Echelon;

/// Upper bound on qubit count accepted by constructors.
pub const MAX_QUBITS: usize = 4096;

/// Largest independent generator set `min_coset_weight` will scan exhaustively.
pub const MAX_COSET_GENERATORS: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::usage(format!(
                "x support has {} positions but z support has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(PauliString { x, z })
    }

    /// X on every listed qubit (0-indexed).
    pub fn xs(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliString {
            x: BitVec::from_indices(n, qubits),
            z: BitVec::zeros(n),
        }
    }

    pub fn zs(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::from_indices(n, qubits),
        }
    }

    pub fn ys(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        let x = BitVec::from_indices(n, qubits);
        PauliString { z: x.clone(), x }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Exchanges X and Z support, the action of transversal Hadamard.
    pub fn hadamard(&self) -> Self {
        PauliString {
            x: self.z.clone(),
            z: self.x.clone(),
        }
    }

    /// Symplectic vector `x || z` of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        let n = self.n();
        BitVec::from_indices(2 * n, self.x.ones().chain(self.z.ones().map(|i| i + n)))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::usage(format!(
                "qubit count mismatch: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    /// Product up to phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(PauliString {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }
}

/// Whether `p` lies in the group generated by `generators`, ignoring phase.
pub fn in_group(p: &PauliString, generators: &[PauliString]) -> bool {
    if p.is_identity() {
        return true;
    }
    if generators.iter().any(|g| g.n() != p.n()) {
        return false;
    }
    let rows: Vec<BitVec> = generators.iter().map(PauliString::symplectic).collect();
    Echelon::new(2 * p.n(), &rows).contains(&p.symplectic())
}

/// Independent subset of `generators` spanning the same group.
pub fn independent_generators(generators: &[PauliString]) -> Vec<PauliString> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let n = first.n();
    let mut kept: Vec<PauliString> = Vec::new();
    let mut rows: Vec<BitVec> = Vec::new();
    for g in generators {
        let e = Echelon::new(2 * n, &rows);
        if !e.contains(&g.symplectic()) {
            rows.push(g.symplectic());
            kept.push(g.clone());
        }
    }
    kept
}

/// Minimum weight of `p·s` over all `s` in the group generated by `stabilizers`.
pub fn min_coset_weight(p: &PauliString, stabilizers: &[PauliString]) -> Result<usize> {
    if let Some(s) = stabilizers.iter().find(|s| s.n() != p.n()) {
        return Err(Error::usage(format!(
            "stabilizer on {} qubits, operator on {}",
            s.n(),
            p.n()
        )));
    }
    let gens = independent_generators(stabilizers);
    if gens.len() > MAX_COSET_GENERATORS {
        return Err(Error::usage(format!(
            "{} independent generators exceed the exhaustive coset limit of {}",
            gens.len(),
            MAX_COSET_GENERATORS
        )));
    }
    // Gray-code walk: each step multiplies in exactly one generator.
    let mut cur = p.clone();
    let mut best = cur.weight();
    for step in 1u64..(1u64 << gens.len()) {
        let flip = step.trailing_zeros() as usize;
        cur.mul_assign_unchecked(&gens[flip]);
        best = best.min(cur.weight());
    }
    Ok(best)
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a dense string such as `"XIZY"`.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n > MAX_QUBITS {
            return Err(Error::usage(format!(
                "{n} qubits exceed limit {MAX_QUBITS}"
            )));
        }
        let mut p = PauliString::identity(n);
        for (i, c) in s.chars().enumerate() {
            match c {
                'I' | '_' => {}
                'X' => p.x.set(i, true),
                'Z' => p.z.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true)
                }
                other => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected Pauli symbol {other:?}"),
                    })
                }
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h6_stabilizers() -> Vec<PauliString> {
        vec![
            PauliString::xs(6, [0, 1, 2, 3]),
            PauliString::zs(6, [0, 1, 2, 3]),
            PauliString::xs(6, [0, 1, 4, 5]),
            PauliString::zs(6, [0, 1, 4, 5]),
        ]
    }

    #[test]
    fn single_qubit_x_and_z_anticommute() {
        let x: PauliString = "X".parse().unwrap();
        let z: PauliString = "Z".parse().unwrap();
        assert!(!x.commutes(&z).unwrap());
    }

    #[test]
    fn four_body_x_and_z_commute() {
        let a = PauliString::xs(6, [0, 1, 2, 3]);
        let b = PauliString::zs(6, [0, 1, 2, 3]);
        assert!(a.commutes(&b).unwrap());
    }

    #[test]
    fn y_pair_commutes_with_y_check() {
        // |{1,2} ∩ {1,2,3,4}| = 2
        let r = PauliString::ys(6, [0, 1]);
        let check = PauliString::ys(6, [0, 1, 2, 3]);
        assert!(r.commutes(&check).unwrap());
        assert!(r.commutes(&PauliString::xs(6, [0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn length_mismatch_is_usage_error() {
        let a = PauliString::identity(3);
        let b = PauliString::identity(4);
        assert!(matches!(a.commutes(&b), Err(Error::Usage(_))));
        assert!(matches!(a.multiply(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn product_of_logical_xs_is_weight_two() {
        let x1 = PauliString::xs(6, [0, 2, 4]);
        let x2 = PauliString::xs(6, [0, 2, 5]);
        let p = x1.multiply(&x2).unwrap();
        assert_eq!(p, PauliString::xs(6, [4, 5]));
        assert_eq!(p.weight(), 2);
    }

    #[test]
    fn product_of_four_body_x_and_z_is_y_type() {
        let s = h6_stabilizers();
        assert_eq!(
            s[0].multiply(&s[1]).unwrap(),
            PauliString::ys(6, [0, 1, 2, 3])
        );
    }

    #[test]
    fn group_membership() {
        let s = h6_stabilizers();
        assert!(in_group(&PauliString::identity(6), &s));
        assert!(in_group(&PauliString::ys(6, [0, 1, 2, 3]), &s));
        assert!(!in_group(&PauliString::xs(6, [4, 5]), &s));
    }

    #[test]
    fn membership_brute_force_agrees() {
        // all 16 products of the H6 generators; X5X6 is never among them
        let s = h6_stabilizers();
        let target = PauliString::xs(6, [4, 5]);
        let mut hit = false;
        for mask in 0..16u32 {
            let mut acc = PauliString::identity(6);
            for (i, g) in s.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.multiply(g).unwrap();
                }
            }
            hit |= acc == target;
        }
        assert!(!hit);
    }

    #[test]
    fn coset_weights() {
        let s = h6_stabilizers();
        assert_eq!(min_coset_weight(&PauliString::identity(6), &s).unwrap(), 0);
        assert_eq!(
            min_coset_weight(&PauliString::xs(6, [4, 5]), &s).unwrap(),
            2
        );
        assert_eq!(
            min_coset_weight(&PauliString::xs(6, [0, 2, 4]), &s).unwrap(),
            3
        );
    }

    #[test]
    fn coset_scan_rejects_large_groups() {
        let n = 30;
        let gens: Vec<_> = (0..21).map(|i| PauliString::zs(n, [i])).collect();
        assert!(matches!(
            min_coset_weight(&PauliString::identity(n), &gens),
            Err(Error::Usage(_))
        ));
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(x, z)| {
                PauliString::from_parts(BitVec::from_bools(&x), BitVec::from_bools(&z)).unwrap()
            })
    }

    fn arb_pair() -> impl Strategy<Value = (PauliString, PauliString)> {
        (1usize..=64).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
    }

    proptest! {
        #[test]
        fn commutation_is_symmetric((a, b) in arb_pair()) {
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        }

        #[test]
        fn multiply_is_self_inverse_and_associative(
            (a, b, c) in (1usize..=64).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n), arb_pauli(n)))
        ) {
            prop_assert!(a.multiply(&a).unwrap().is_identity());
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn coset_weight_never_exceeds_weight(p in arb_pauli(6)) {
            let s = h6_stabilizers();
            prop_assert!(min_coset_weight(&p, &s).unwrap() <= p.weight());
        }

        #[test]
        fn membership_invariant_under_row_reduction(p in arb_pauli(6), swap in any::<bool>()) {
            let s = h6_stabilizers();
            // replace generators by products of one another; the group is unchanged
            let mut reduced = vec![
                s[0].multiply(&s[2]).unwrap(),
                s[1].clone(),
                s[2].clone(),
                s[3].multiply(&s[1]).unwrap(),
            ];
            if swap {
                reduced.reverse();
            }
            prop_assert_eq!(in_group(&p, &s), in_group(&p, &reduced));
        }
    }
}
