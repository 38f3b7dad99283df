//! Fixed-length bit-vectors packed into 64-bit words.

use std::fmt;

const WORD: usize = 64;

/// A fixed-length vector over GF(2).
///
/// Bits past `len` in the last word are always zero, so word-level
/// equality, popcount and hashing agree with element-wise semantics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Builds a vector of length `len <= 128` from the low bits of `mask`.
    pub fn from_u128(len: usize, mask: u128) -> Self {
        assert!(len <= 128);
        let mut v = Self::zeros(len);
        for (w, word) in v.words.iter_mut().enumerate() {
            *word = (mask >> (w * WORD)) as u64;
        }
        v.clear_tail();
        v
    }

    /// Low 128 bits as an integer.
    pub fn to_u128(&self) -> u128 {
        self.words
            .iter()
            .take(2)
            .enumerate()
            .fold(0u128, |acc, (w, &x)| acc | ((x as u128) << (w * WORD)))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Size of the intersection of the two supports.
    pub fn and_count(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Parity of the intersection of the two supports.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * WORD + tz)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}](", self.len)?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_across_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(63, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![63, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.flip(64);
        assert!(!v.get(64));
    }

    #[test]
    fn u128_roundtrip_masks_tail() {
        let v = BitVec::from_u128(70, u128::MAX);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.to_u128(), (1u128 << 70) - 1);
    }

    #[test]
    fn dot_is_intersection_parity() {
        let a = BitVec::from_indices(8, [0, 1, 2, 3]);
        let b = BitVec::from_indices(8, [0, 1, 4, 5]);
        assert!(!a.dot(&b));
        assert_eq!(a.and_count(&b), 2);
        let c = BitVec::from_indices(8, [0, 4]);
        assert!(a.dot(&c));
    }
}
